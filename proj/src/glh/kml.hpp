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

#ifndef GLH_KML_HPP
#define GLH_KML_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glh/geo.hpp"
#include "glh/time.hpp"

namespace glh {

enum class EntryKind { PlaceVisit, Movement };

std::string_view to_string(EntryKind k) noexcept;

/// One placemark of a per-day Google Location History KML export.
///
/// A PlaceVisit has exactly one path point and no raw_mode_label; a Movement
/// always has a raw_mode_label (its placemark name, e.g. "Driving") and the
/// line geometry as its path.
struct TimelineEntry {
  EntryKind kind = EntryKind::PlaceVisit;
  std::string name;
  std::optional<std::string> address;
  TimeWindow window;
  std::vector<GeoPoint> path;
  std::optional<std::string> raw_mode_label;
  /// GLH location category from ExtendedData ("Category"), if present.
  std::string category;

  friend bool operator==(const TimelineEntry&, const TimelineEntry&) = default;
};

/// Parses KML 2.2 bytes. Placemarks with Point geometry become PlaceVisits,
/// those with LineString geometry Movements; placemarks with neither are
/// skipped. Output is stably sorted by window.begin.
///
/// Throws Error with code MalformedXml, MissingTimeSpan, InvalidTimeSpan or
/// InvalidCoordinate; detail["placemark_index"] is the zero-based index of
/// the offending placemark in document order.
std::vector<TimelineEntry> parse_kml(std::string_view bytes);

struct CoverageReport {
  bool matches = true;
  int out_of_day_count = 0;
};

/// Day membership of each entry in `tz`. An entry counts as inside the day
/// when its window intersects [local midnight, next local midnight).
CoverageReport check_day_coverage(std::span<const TimelineEntry> entries, Date expected_date,
                                  const TimeZone& tz);

bool intersects(const TimeWindow& w, const TimeWindow& day) noexcept;

}  // namespace glh

#endif  // GLH_KML_HPP
