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

#include "glh/design.hpp"

#include <cmath>

#include "glh/csv.hpp"
#include "glh/error.hpp"

namespace glh {

namespace {
constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "constant",          "automobile",       "local_transit",   "regional_transit",
    "cycle_walk",        "speed_lt_5kmh",    "speed_5_19kmh",   "distance_ge_5km",
    "ln_pop_density",    "age_lt_30",        "full_time_worker"};

void set(DesignRow& row, Feature f, double v) { row.x[static_cast<std::size_t>(f)] = v; }
}  // namespace

std::string_view to_string(Feature f) noexcept { return kFeatureNames[static_cast<std::size_t>(f)]; }

DesignRow build_design(const DiaryEvent& leg_event, const Respondent& respondent,
                       const OriginContext& origin) {
  if (!leg_event.is_leg()) {
    throw Error(ErrorCode::KindMismatch, "design rows are built from trip legs");
  }
  const LegDetails& leg = leg_event.leg();
  if (!leg.validated_mode || !leg.inferred_mode) {
    throw Error(ErrorCode::MissingLabel, "leg lacks a validated or a mapped inferred mode");
  }
  const double duration_s = leg_event.duration_s();
  if (!(duration_s > 0.0)) throw Error(ErrorCode::ZeroDuration, "leg has zero duration");
  if (!(origin.population_density_kppl_km2 > 0.0)) {
    throw Error(ErrorCode::NonpositiveDensity, "origin population density must be positive",
                {{"density", origin.population_density_kppl_km2}});
  }

  DesignRow row;
  row.mismatch = *leg.validated_mode != *leg.inferred_mode;
  set(row, Feature::Constant, 1.0);
  switch (*leg.validated_mode) {
    case Mode::Automobile: set(row, Feature::Automobile, 1.0); break;
    case Mode::LocalTransit: set(row, Feature::LocalTransit, 1.0); break;
    case Mode::RegionalTransit: set(row, Feature::RegionalTransit, 1.0); break;
    case Mode::Cycle:
    case Mode::Walk: set(row, Feature::CycleWalk, 1.0); break;
    case Mode::TaxiRidehail:
    case Mode::Motorcycle: break;
  }
  const double speed_kmh = (leg.distance_m / 1000.0) / (duration_s / 3600.0);
  if (speed_kmh < kSlowSpeedKmh) {
    set(row, Feature::SpeedBelow5, 1.0);
  } else if (speed_kmh < kFastSpeedKmh) {
    set(row, Feature::Speed5To20, 1.0);
  }
  if (leg.distance_m >= kLongLegM) set(row, Feature::DistanceAtLeast5Km, 1.0);
  set(row, Feature::LnPopulationDensity, std::log(origin.population_density_kppl_km2));
  if (respondent.age < kYoungAge) set(row, Feature::AgeBelow30, 1.0);
  if (respondent.employment == Employment::FullTime) set(row, Feature::FullTimeWorker, 1.0);
  return row;
}

std::vector<Zone> read_zones(const std::filesystem::path& csv_path) {
  const csv::Table t = csv::read_file(csv_path);
  std::vector<Zone> zones;
  for (const auto& row : t.rows) {
    Zone z;
    try {
      z.id = std::stoll(row["zone_id"]);
      z.centroid = {std::stod(row["centroid_lat"]), std::stod(row["centroid_lon"])};
      z.density_kppl_km2 = std::stod(row["density_kppl_km2"]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad zone row at line " + std::to_string(row.line()),
                  {{"file", csv_path.string()}, {"line", row.line()}});
    }
    if (!is_valid(z.centroid)) {
      throw Error(ErrorCode::InvalidArgument,
                  "zone centroid out of range at line " + std::to_string(row.line()),
                  {{"file", csv_path.string()}, {"line", row.line()}});
    }
    zones.push_back(z);
  }
  return zones;
}

OriginContext lookup_density(const GeoPoint& point, std::span<const Zone> zones) {
  if (zones.empty()) throw Error(ErrorCode::EmptyZoneTable, "zone table is empty");
  const Zone* best = nullptr;
  double best_d = 0.0;
  for (const auto& z : zones) {
    const double d = haversine_m(point, z.centroid);
    if (!best || d < best_d || (d == best_d && z.id < best->id)) {
      best = &z;
      best_d = d;
    }
  }
  return {best->density_kppl_km2};
}

}  // namespace glh
