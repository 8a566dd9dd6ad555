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

#ifndef GLH_TRIPS_HPP
#define GLH_TRIPS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glh/diary.hpp"

namespace glh {

enum class TripCategory { SingleMode, Multimodal };
std::string_view to_string(TripCategory c) noexcept;

/// A maximal run of consecutive trip legs, classified.
struct Trip {
  std::vector<std::size_t> leg_indices;  // into TravelDiary::events
  TripCategory category = TripCategory::SingleMode;
  /// nullopt only when no leg in the group carries any mode label.
  std::optional<Mode> main_mode;
  std::optional<Mode> access_mode;
  std::optional<Mode> egress_mode;
  double distance_m = 0.0;
  double duration_s = 0.0;          // first leg begin to last leg end
  double leg_duration_sum_s = 0.0;  // excludes transfer gaps
  GeoPoint origin;
  GeoPoint destination;
  Timestamp depart;
  Timestamp arrive;
  /// Legs that fell back to the GLH label because they were never validated.
  std::vector<std::size_t> inferred_fallback_legs;
  /// Legs with neither a validated nor a mapped inferred mode.
  std::vector<std::size_t> unlabeled_legs;

  friend bool operator==(const Trip&, const Trip&) = default;
};

/// Splits the event sequence at every activity. Each group lists the event
/// indices of one run of consecutive legs.
std::vector<std::vector<std::size_t>> group_legs(std::span<const DiaryEvent> events);

/// The mode used for classification: validated, else inferred.
std::optional<Mode> effective_mode(const LegDetails& leg) noexcept;

/// Classifies one leg group. Throws Error(EmptyGroup) for an empty group.
Trip classify_group(std::span<const DiaryEvent> events, std::span<const std::size_t> group);

std::vector<Trip> aggregate(const TravelDiary& diary);

}  // namespace glh

#endif  // GLH_TRIPS_HPP
