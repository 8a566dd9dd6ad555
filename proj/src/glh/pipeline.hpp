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

#ifndef GLH_PIPELINE_HPP
#define GLH_PIPELINE_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "glh/diary.hpp"
#include "glh/store.hpp"

namespace glh {

struct PipelineOptions {
  std::string time_zone{kDefaultTimeZone};
  double short_dwell_s = kDefaultShortDwellS;
  double overlap_tolerance_s = 60.0;
  ModeMapper mode_mapper;

  DiaryOptions diary_options() const {
    return {time_zone, overlap_tolerance_s, &mode_mapper};
  }
};

/// Columns: id,age,gender,household_size,employment[,workplace_arrangement]
/// [,income_band][,home_lat,home_lon]. Enum cells use identifier form.
std::vector<Respondent> read_respondents_csv(const std::filesystem::path& path);

/// Columns: respondent_id,event_index,purpose,mode_response (one of the
/// last two per row).
std::map<std::string, std::vector<ValidationResponse>> read_validations_csv(
    const std::filesystem::path& path);

/// Parses the KML, merges the day into the respondent's diary, re-flags
/// short dwells, stores the raw bytes and returns the day's fragment. This
/// is the one path by which KML enters a store (CLI ingest and HTTP upload).
nlohmann::json upload_day(Store& store, const std::string& respondent_id, Date day,
                          std::string_view kml_bytes, const PipelineOptions& options);

/// Applies a batch of validations atomically; returns the status document.
nlohmann::json submit_validations(Store& store, const std::string& respondent_id,
                                  const std::vector<ValidationResponse>& responses);

/// {id, phase, setup_declared, days: [{date, events, validated}], ...}
nlohmann::json respondent_status(const StoreRecord& record);

/// Date embedded in a file name such as "history-2023-07-02.kml".
std::optional<Date> date_from_filename(std::string_view filename);

struct IngestSummary {
  std::size_t respondents = 0;
  std::size_t days = 0;
  std::size_t events = 0;
};

/// Registers every respondent of the CSV into the store at `store_root`
/// (created when absent), uploads <kml_dir>/<respondent_id>/*.kml in date
/// order and applies optional validations. KML directories for unknown
/// respondents are input errors.
IngestSummary ingest(const std::filesystem::path& kml_dir,
                     const std::filesystem::path& respondents_csv,
                     const std::optional<std::filesystem::path>& validations_csv,
                     const std::filesystem::path& store_root, const PipelineOptions& options);

}  // namespace glh

#endif  // GLH_PIPELINE_HPP
