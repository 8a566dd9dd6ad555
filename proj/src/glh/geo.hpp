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

#ifndef GLH_GEO_HPP
#define GLH_GEO_HPP

#include <span>

namespace glh {

inline constexpr double kEarthRadiusM = 6371000.0;

/// WGS84 position in decimal degrees.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

bool is_valid(const GeoPoint& p) noexcept;

/// Great-circle distance on a sphere of radius kEarthRadiusM. Symmetric in
/// its arguments bit for bit.
double haversine_m(const GeoPoint& a, const GeoPoint& b) noexcept;

/// Sum of consecutive haversine distances; 0 for fewer than two points.
double polyline_length_m(std::span<const GeoPoint> path) noexcept;

}  // namespace glh

#endif  // GLH_GEO_HPP
