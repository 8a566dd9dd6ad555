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

#ifndef GLH_DESIGN_HPP
#define GLH_DESIGN_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "glh/diary.hpp"
#include "glh/geo.hpp"

namespace glh {

/// Columns of the mode-inference error model.
enum class Feature : unsigned char {
  Constant,
  Automobile,
  LocalTransit,
  RegionalTransit,
  CycleWalk,
  SpeedBelow5,
  Speed5To20,
  DistanceAtLeast5Km,
  LnPopulationDensity,
  AgeBelow30,
  FullTimeWorker,
};
inline constexpr std::size_t kFeatureCount = 11;
std::string_view to_string(Feature f) noexcept;

struct OriginContext {
  double population_density_kppl_km2 = 0.0;
};

struct DesignRow {
  bool mismatch = false;  // inferred != validated
  std::array<double, kFeatureCount> x{};

  double operator[](Feature f) const noexcept { return x[static_cast<std::size_t>(f)]; }
};

inline constexpr double kSlowSpeedKmh = 5.0;
inline constexpr double kFastSpeedKmh = 20.0;  // reference band starts here
inline constexpr double kLongLegM = 5000.0;
inline constexpr int kYoungAge = 30;

/// Builds one design row from a validated trip leg.
///
/// Speed bands are <5, [5,20) and the >=20 km/h reference; the distance
/// dummy is >=5 km. Cycle and walk share one dummy; taxi/ride-hail and
/// motorcycle legs carry no mode dummy.
///
/// Throws MissingLabel (leg lacks either mode label), ZeroDuration or
/// NonpositiveDensity.
DesignRow build_design(const DiaryEvent& leg_event, const Respondent& respondent,
                       const OriginContext& origin);

struct Zone {
  std::int64_t id = 0;
  GeoPoint centroid;
  double density_kppl_km2 = 0.0;
};

/// Reads zone_id,centroid_lat,centroid_lon,density_kppl_km2.
std::vector<Zone> read_zones(const std::filesystem::path& csv_path);

/// Nearest centroid by haversine distance; equal distances resolve to the
/// lower zone id. Throws Error(EmptyZoneTable).
OriginContext lookup_density(const GeoPoint& point, std::span<const Zone> zones);

}  // namespace glh

#endif  // GLH_DESIGN_HPP
