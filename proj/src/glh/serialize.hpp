// Copyright 2026 The glhdiary Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GLH_SERIALIZE_HPP
#define GLH_SERIALIZE_HPP

#include <string>
#include <string_view>

#include <json.hpp>

#include "glh/diary.hpp"

namespace glh {

inline constexpr std::string_view kDiarySchema = "glh-diary/1";
inline constexpr std::string_view kFragmentSchema = "glh-fragment/1";

inline constexpr std::string_view kPurposePrompt = "What were you doing at this location";
inline constexpr std::string_view kModePrompt = "What was your travel mode for this trip";

nlohmann::json to_json(const GeoPoint& p);
GeoPoint geo_point_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Respondent& r);
/// Requires age, gender, household_size and employment; the remaining
/// attributes default. Throws Error(InvalidArgument) naming the bad field.
Respondent respondent_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TravelDiary& d);
/// Throws SchemaVersionMismatch when "schema" is not glh-diary/1.
TravelDiary diary_from_json(const nlohmann::json& j);

/// Rows of one surveyed day in diary-table form (local date and HH:MM,
/// name, address with "N/A" for legs, prompt) plus the underlying values.
nlohmann::json day_fragment(const TravelDiary& d, Date day);

/// Parses a validations payload: either an array or {"responses": [...]};
/// each item is {event_index, purpose} or {event_index, mode_response}.
std::vector<ValidationResponse> validations_from_json(const nlohmann::json& j);

/// Compact dump, sorted keys, UTF-8 preserved. All exported JSON goes
/// through here so identical inputs give identical bytes.
std::string dump(const nlohmann::json& j);
std::string dump_pretty(const nlohmann::json& j);

}  // namespace glh

#endif  // GLH_SERIALIZE_HPP
