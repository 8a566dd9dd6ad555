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

#ifndef GLH_TIME_HPP
#define GLH_TIME_HPP

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

#include <absl/time/time.h>

namespace glh {

/// UTC instant, millisecond resolution (GLH exports carry milliseconds).
using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;
using Date = std::chrono::year_month_day;

inline constexpr std::string_view kDefaultTimeZone = "America/Toronto";

struct TimeWindow {
  Timestamp begin;
  Timestamp end;

  double duration_s() const noexcept {
    return std::chrono::duration<double>(end - begin).count();
  }
  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

/// RFC 3339 / ISO-8601 with offset or 'Z'. Returns nullopt on bad input.
std::optional<Timestamp> parse_timestamp(std::string_view text);
/// Always "YYYY-MM-DDTHH:MM:SS.mmmZ".
std::string format_timestamp(Timestamp t);

std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date d);

class TimeZone {
 public:
  /// Throws Error(InvalidArgument) for unknown zone names.
  static TimeZone load(std::string_view name);

  const std::string& name() const noexcept { return name_; }

  /// [local midnight, next local midnight) as UTC instants.
  TimeWindow day_bounds(Date d) const;
  Date local_date(Timestamp t) const;
  /// "HH:MM" in local time.
  std::string local_hhmm(Timestamp t) const;

 private:
  TimeZone(std::string name, absl::TimeZone tz) : name_(std::move(name)), tz_(tz) {}

  std::string name_;
  absl::TimeZone tz_;
};

}  // namespace glh

#endif  // GLH_TIME_HPP
