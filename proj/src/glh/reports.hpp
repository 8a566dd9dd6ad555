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

#ifndef GLH_REPORTS_HPP
#define GLH_REPORTS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "glh/design.hpp"
#include "glh/logit.hpp"
#include "glh/metrics.hpp"
#include "glh/store.hpp"

namespace glh {

/// respondent_id,trip_index,category,main_mode,access_mode,egress_mode,
/// distance_m,duration_s,depart,arrive,origin_lat,origin_lon,dest_lat,dest_lon
std::string trips_csv(std::span<const StoreRecord> records);

nlohmann::json histogram_json(const Histogram& h);
std::string histogram_csv(const Histogram& h);

/// Descriptive statistics of the whole store. `reference` adds the
/// sample-vs-reference marginal tables.
nlohmann::json stats_report(std::span<const StoreRecord> records,
                            const std::vector<ReferenceShare>* reference = nullptr);
/// Plain-text rendering of stats_report().
std::string stats_text(const nlohmann::json& report);

std::string confusion_report_csv(std::span<const StoreRecord> records);

struct DesignBuild {
  std::vector<DesignRow> rows;
  std::size_t legs = 0;
  std::size_t missing_label = 0;
  std::size_t zero_duration = 0;
};

/// One design row per leg with both labels and a positive duration; origin
/// density from the leg's first path point.
DesignBuild design_rows(std::span<const StoreRecord> records, std::span<const Zone> zones);

nlohmann::json fit_json(const logit::Fit& fit, const DesignBuild* build = nullptr);
/// Coefficient / t-statistic table followed by the likelihood summary.
std::string fit_text(const logit::Fit& fit);

}  // namespace glh

#endif  // GLH_REPORTS_HPP
