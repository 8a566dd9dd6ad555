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

#include "glh/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace glh {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

bool is_valid(const GeoPoint& p) noexcept {
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 &&
         p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0;
}

double haversine_m(const GeoPoint& a, const GeoPoint& b) noexcept {
  // Absolute differences and a commutative product keep d(a,b) == d(b,a).
  const double half_dlat = std::fabs(a.lat - b.lat) * kDegToRad * 0.5;
  const double half_dlon = std::fabs(a.lon - b.lon) * kDegToRad * 0.5;
  const double s_lat = std::sin(half_dlat);
  const double s_lon = std::sin(half_dlon);
  const double cos_prod = std::cos(a.lat * kDegToRad) * std::cos(b.lat * kDegToRad);
  double h = s_lat * s_lat + cos_prod * s_lon * s_lon;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

double polyline_length_m(std::span<const GeoPoint> path) noexcept {
  double total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    total += haversine_m(path[i - 1], path[i]);
  }
  return total;
}

}  // namespace glh
