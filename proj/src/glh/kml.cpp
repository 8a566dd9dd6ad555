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

#include "glh/kml.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <memory>

#include <expat.h>

#include "glh/error.hpp"
#include "glh/mode.hpp"

namespace glh {

namespace {

enum class Geometry { None, Point, Line };

struct PlacemarkState {
  std::string name;
  std::optional<std::string> address;
  std::optional<std::string> begin;
  std::optional<std::string> end;
  std::optional<std::string> point_coords;
  std::vector<std::string> line_coords;
  std::string category;
};

struct ParseContext {
  std::vector<std::string> stack;  // local element names
  std::string text;
  std::optional<PlacemarkState> current;
  std::size_t placemark_index = 0;
  std::string data_name;  // name attribute of the open <Data> element
  std::vector<std::pair<std::size_t, PlacemarkState>> placemarks;
};

std::string_view local_name(const XML_Char* qualified) {
  // Namespace-aware parser reports "uri|local".
  std::string_view s(qualified);
  const auto bar = s.rfind('|');
  return bar == std::string_view::npos ? s : s.substr(bar + 1);
}

bool inside(const ParseContext& ctx, std::string_view element) {
  return std::find(ctx.stack.begin(), ctx.stack.end(), element) != ctx.stack.end();
}

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
  auto& ctx = *static_cast<ParseContext*>(user);
  const std::string_view local = local_name(name);
  ctx.stack.emplace_back(local);
  ctx.text.clear();
  if (local == "Placemark") {
    ctx.current.emplace();
  } else if (local == "Data" && ctx.current) {
    ctx.data_name.clear();
    for (int i = 0; attrs[i] != nullptr; i += 2) {
      if (local_name(attrs[i]) == "name") ctx.data_name = attrs[i + 1];
    }
  }
}

void XMLCALL on_end(void* user, const XML_Char* name) {
  auto& ctx = *static_cast<ParseContext*>(user);
  const std::string_view local = local_name(name);
  if (ctx.current) {
    auto& pm = *ctx.current;
    const std::string value(trim(ctx.text));
    // Only the placemark's own name, not names nested in sub-features.
    const bool direct_child =
        ctx.stack.size() >= 2 && ctx.stack[ctx.stack.size() - 2] == "Placemark";
    if (local == "name" && direct_child) {
      pm.name = value;
    } else if (local == "address" && direct_child) {
      pm.address = value;
    } else if (local == "begin" && inside(ctx, "TimeSpan")) {
      pm.begin = value;
    } else if (local == "end" && inside(ctx, "TimeSpan")) {
      pm.end = value;
    } else if (local == "coordinates") {
      if (inside(ctx, "LineString")) {
        pm.line_coords.push_back(value);
      } else if (inside(ctx, "Point") && !pm.point_coords) {
        pm.point_coords = value;
      }
    } else if (local == "value" && inside(ctx, "Data")) {
      if (to_lower_ascii(ctx.data_name) == "category") pm.category = value;
    } else if (local == "Placemark") {
      ctx.placemarks.emplace_back(ctx.placemark_index++, std::move(pm));
      ctx.current.reset();
    }
  }
  ctx.text.clear();
  if (!ctx.stack.empty()) ctx.stack.pop_back();
}

void XMLCALL on_text(void* user, const XML_Char* s, int len) {
  auto& ctx = *static_cast<ParseContext*>(user);
  ctx.text.append(s, static_cast<std::size_t>(len));
}

[[noreturn]] void fail(ErrorCode code, std::size_t index, const std::string& what) {
  throw Error(code, "placemark " + std::to_string(index) + ": " + what,
              {{"placemark_index", index}});
}

double parse_double(std::string_view s, bool& ok) {
  // strtod needs a terminated buffer; coordinates are short.
  const std::string buf(s);
  char* endp = nullptr;
  const double v = std::strtod(buf.c_str(), &endp);
  ok = !buf.empty() && endp == buf.c_str() + buf.size();
  return v;
}

std::vector<GeoPoint> parse_coordinates(std::string_view text, std::size_t index) {
  // Whitespace-separated "lon,lat[,alt]" tuples.
  std::vector<GeoPoint> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    const std::string_view tuple = text.substr(pos, end - pos);
    pos = end;

    const auto c1 = tuple.find(',');
    if (c1 == std::string_view::npos) fail(ErrorCode::InvalidCoordinate, index, "bad tuple '" + std::string(tuple) + "'");
    const auto c2 = tuple.find(',', c1 + 1);
    bool ok_lon = false, ok_lat = false;
    const double lon = parse_double(tuple.substr(0, c1), ok_lon);
    const double lat = parse_double(
        tuple.substr(c1 + 1, c2 == std::string_view::npos ? std::string_view::npos : c2 - c1 - 1),
        ok_lat);
    const GeoPoint p{lat, lon};
    if (!ok_lon || !ok_lat || !is_valid(p)) {
      fail(ErrorCode::InvalidCoordinate, index, "coordinate out of range '" + std::string(tuple) + "'");
    }
    out.push_back(p);
  }
  return out;
}

TimelineEntry to_entry(std::size_t index, PlacemarkState& pm, Geometry geometry) {
  TimelineEntry e;
  e.name = pm.name;
  e.address = pm.address;
  e.category = pm.category;
  if (!pm.begin || !pm.end || pm.begin->empty() || pm.end->empty()) {
    fail(ErrorCode::MissingTimeSpan, index, "missing TimeSpan begin/end");
  }
  const auto begin = parse_timestamp(*pm.begin);
  const auto end = parse_timestamp(*pm.end);
  if (!begin || !end) fail(ErrorCode::InvalidTimeSpan, index, "unparseable TimeSpan timestamp");
  if (*end < *begin) fail(ErrorCode::InvalidTimeSpan, index, "TimeSpan end precedes begin");
  e.window = {*begin, *end};

  if (geometry == Geometry::Line) {
    e.kind = EntryKind::Movement;
    for (const auto& coords : pm.line_coords) {
      auto pts = parse_coordinates(coords, index);
      e.path.insert(e.path.end(), pts.begin(), pts.end());
    }
    if (e.path.empty()) fail(ErrorCode::InvalidCoordinate, index, "empty LineString");
    e.raw_mode_label = pm.name;
  } else {
    e.kind = EntryKind::PlaceVisit;
    auto pts = parse_coordinates(*pm.point_coords, index);
    if (pts.size() != 1) fail(ErrorCode::InvalidCoordinate, index, "Point must have one coordinate");
    e.path = std::move(pts);
  }
  return e;
}

}  // namespace

std::string_view to_string(EntryKind k) noexcept {
  return k == EntryKind::PlaceVisit ? "PlaceVisit" : "Movement";
}

std::vector<TimelineEntry> parse_kml(std::string_view bytes) {
  ParseContext ctx;
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreateNS("UTF-8", '|'), &XML_ParserFree);
  if (!parser) throw Error(ErrorCode::Internal, "cannot allocate XML parser");
  XML_SetUserData(parser.get(), &ctx);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);

  if (XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE) ==
      XML_STATUS_ERROR) {
    const auto line = XML_GetCurrentLineNumber(parser.get());
    throw Error(ErrorCode::MalformedXml,
                std::string("malformed XML at line ") + std::to_string(line) + ": " +
                    XML_ErrorString(XML_GetErrorCode(parser.get())),
                {{"placemark_index", ctx.current ? nlohmann::json(ctx.placemark_index)
                                                 : nlohmann::json(nullptr)},
                 {"line", line}});
  }

  std::vector<TimelineEntry> entries;
  entries.reserve(ctx.placemarks.size());
  for (auto& [index, pm] : ctx.placemarks) {
    Geometry g = Geometry::None;
    if (!pm.line_coords.empty()) {
      g = Geometry::Line;
    } else if (pm.point_coords) {
      g = Geometry::Point;
    }
    if (g == Geometry::None) continue;
    entries.push_back(to_entry(index, pm, g));
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const TimelineEntry& a, const TimelineEntry& b) {
                     return a.window.begin < b.window.begin;
                   });
  return entries;
}

bool intersects(const TimeWindow& w, const TimeWindow& day) noexcept {
  if (w.begin >= day.end) return false;
  if (w.end > day.begin) return true;
  // Zero-length entries sitting exactly on the day start still belong to it.
  return w.begin == w.end && w.begin >= day.begin;
}

CoverageReport check_day_coverage(std::span<const TimelineEntry> entries, Date expected_date,
                                  const TimeZone& tz) {
  const TimeWindow day = tz.day_bounds(expected_date);
  CoverageReport report;
  for (const auto& e : entries) {
    if (!intersects(e.window, day)) ++report.out_of_day_count;
  }
  report.matches = report.out_of_day_count == 0;
  return report;
}

}  // namespace glh
