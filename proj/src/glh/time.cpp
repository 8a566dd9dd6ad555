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

#include "glh/time.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include <absl/time/civil_time.h>

#include "glh/error.hpp"

namespace glh {

namespace {

Timestamp from_absl(absl::Time t) {
  return Timestamp{std::chrono::milliseconds{absl::ToUnixMillis(t)}};
}

absl::Time to_absl(Timestamp t) {
  return absl::FromUnixMillis(t.time_since_epoch().count());
}

bool read_int(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  absl::Time t;
  std::string err;
  if (!absl::ParseTime(absl::RFC3339_full, std::string(text), &t, &err)) {
    return std::nullopt;
  }
  return from_absl(t);
}

std::string format_timestamp(Timestamp t) {
  return absl::FormatTime("%Y-%m-%dT%H:%M:%E3SZ", to_absl(t), absl::UTCTimeZone());
}

std::optional<Date> parse_date(std::string_view text) {
  // YYYY-MM-DD, also tolerating unpadded month/day ("2023-7-2").
  const auto first = text.find('-');
  if (first == std::string_view::npos) return std::nullopt;
  const auto second = text.find('-', first + 1);
  if (second == std::string_view::npos) return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!read_int(text.substr(0, first), y) ||
      !read_int(text.substr(first + 1, second - first - 1), m) ||
      !read_int(text.substr(second + 1), d)) {
    return std::nullopt;
  }
  Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
            std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(Date d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

TimeZone TimeZone::load(std::string_view name) {
  absl::TimeZone tz;
  if (!absl::LoadTimeZone(std::string(name), &tz)) {
    throw Error(ErrorCode::InvalidArgument, "unknown time zone '" + std::string(name) + "'",
                {{"time_zone", std::string(name)}});
  }
  return TimeZone(std::string(name), tz);
}

TimeWindow TimeZone::day_bounds(Date d) const {
  const absl::CivilDay day(static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                           static_cast<unsigned>(d.day()));
  return {from_absl(absl::FromCivil(day, tz_)), from_absl(absl::FromCivil(day + 1, tz_))};
}

Date TimeZone::local_date(Timestamp t) const {
  const absl::CivilDay day = absl::ToCivilDay(to_absl(t), tz_);
  return Date{std::chrono::year{static_cast<int>(day.year())},
              std::chrono::month{static_cast<unsigned>(day.month())},
              std::chrono::day{static_cast<unsigned>(day.day())}};
}

std::string TimeZone::local_hhmm(Timestamp t) const {
  return absl::FormatTime("%H:%M", to_absl(t), tz_);
}

}  // namespace glh
