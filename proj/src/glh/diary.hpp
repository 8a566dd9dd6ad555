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

#ifndef GLH_DIARY_HPP
#define GLH_DIARY_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "glh/geo.hpp"
#include "glh/kml.hpp"
#include "glh/mode.hpp"
#include "glh/time.hpp"

namespace glh {

enum class Gender { Male, Female, OtherUnstated };
enum class Employment { FullTime, PartTime, NotEmployed };
enum class Workplace { UsualPlace, HomeOrHybrid, NoFixedPlace, NotApplicable };
enum class IncomeBand { Below40k, From40kTo80k, From80kTo125k, From125kTo200k, Above200k, DeclineUnknown };

std::string_view to_string(Gender g) noexcept;
std::string_view to_string(Employment e) noexcept;
std::string_view to_string(Workplace w) noexcept;
std::string_view to_string(IncomeBand b) noexcept;
std::optional<Gender> gender_from_string(std::string_view s) noexcept;
std::optional<Employment> employment_from_string(std::string_view s) noexcept;
std::optional<Workplace> workplace_from_string(std::string_view s) noexcept;
std::optional<IncomeBand> income_band_from_string(std::string_view s) noexcept;

inline constexpr int kMinimumAge = 18;

struct Respondent {
  std::string id;
  int age = kMinimumAge;
  Gender gender = Gender::OtherUnstated;
  int household_size = 1;
  Employment employment = Employment::NotEmployed;
  Workplace workplace = Workplace::NotApplicable;
  IncomeBand income_band = IncomeBand::DeclineUnknown;
  std::optional<GeoPoint> home_location;

  friend bool operator==(const Respondent&, const Respondent&) = default;
};

/// Throws Error(InvalidArgument) when an attribute is out of its domain
/// (age below 18, household size below 1, empty or unsafe id).
void validate(const Respondent& r);
bool is_valid_respondent_id(std::string_view id) noexcept;

enum class PurposeClass { Home, WorkFromHome, Work, School, ShoppingErrands, Other };

std::string_view to_string(PurposeClass p) noexcept;
std::optional<PurposeClass> purpose_class_from_string(std::string_view s) noexcept;

struct ActivityPurpose {
  PurposeClass value = PurposeClass::Other;
  /// The respondent's answer verbatim, e.g. "Dine in restaurant, bar, coffee, etc.".
  std::string subtype;

  friend bool operator==(const ActivityPurpose&, const ActivityPurpose&) = default;
};

/// Respondent-facing activity purpose options (validation dropdown).
const std::vector<std::string>& purpose_response_options();
/// Known options map to their class; identifiers map directly; any other
/// non-empty text is an Other activity with that subtype.
std::optional<ActivityPurpose> interpret_purpose_response(std::string_view response);

enum class EventKind { Activity, TripLeg };
std::string_view to_string(EventKind k) noexcept;

struct ActivityDetails {
  std::string name;
  std::optional<std::string> address;
  GeoPoint location;
  std::string glh_category;
  std::optional<ActivityPurpose> purpose;

  friend bool operator==(const ActivityDetails&, const ActivityDetails&) = default;
};

struct LegDetails {
  std::vector<GeoPoint> path;
  std::string raw_mode_label;
  std::optional<Mode> inferred_mode;  // nullopt = Unmapped
  std::optional<Mode> validated_mode;
  std::string mode_response;          // respondent's detailed answer
  double distance_m = 0.0;
  std::optional<double> avg_speed_kmh;  // undefined for zero-duration legs

  friend bool operator==(const LegDetails&, const LegDetails&) = default;
};

struct DiaryEvent {
  TimeWindow window;
  /// The surveyed day whose KML file produced this event.
  Date source_day{};
  std::variant<ActivityDetails, LegDetails> details;

  EventKind kind() const noexcept {
    return std::holds_alternative<ActivityDetails>(details) ? EventKind::Activity
                                                            : EventKind::TripLeg;
  }
  bool is_activity() const noexcept { return kind() == EventKind::Activity; }
  bool is_leg() const noexcept { return kind() == EventKind::TripLeg; }
  double duration_s() const noexcept { return window.duration_s(); }

  const ActivityDetails& activity() const { return std::get<ActivityDetails>(details); }
  ActivityDetails& activity() { return std::get<ActivityDetails>(details); }
  const LegDetails& leg() const { return std::get<LegDetails>(details); }
  LegDetails& leg() { return std::get<LegDetails>(details); }

  friend bool operator==(const DiaryEvent&, const DiaryEvent&) = default;
};

enum class QaCode {
  ShortDwell,
  OverlapWarning,
  MidnightSplit,
  OutOfDay,
  UndefinedSpeed,
  UnlabeledLeg,
  InferredFallback,
};
std::string_view to_string(QaCode c) noexcept;
std::optional<QaCode> qa_code_from_string(std::string_view s) noexcept;

struct QaFlag {
  std::size_t event_index = 0;
  QaCode code = QaCode::ShortDwell;
  std::string message;

  friend bool operator==(const QaFlag&, const QaFlag&) = default;
};

struct TravelDiary {
  std::string respondent_id;
  std::string time_zone{kDefaultTimeZone};
  std::vector<Date> days;  // sorted ascending
  std::vector<DiaryEvent> events;
  std::vector<QaFlag> qa_flags;

  friend bool operator==(const TravelDiary&, const TravelDiary&) = default;
};

struct DiaryOptions {
  std::string time_zone{kDefaultTimeZone};
  /// Overlaps up to this many seconds are boundary jitter and not flagged.
  double overlap_tolerance_s = 60.0;
  const ModeMapper* mode_mapper = nullptr;  // nullptr = built-in table
};

using DayEntries = std::pair<Date, std::vector<TimelineEntry>>;

/// Converts every day's entries into diary events (PlaceVisit -> Activity,
/// Movement -> TripLeg) and merges them chronologically. Throws
/// Error(DuplicateDay) when a date appears twice. Overlaps beyond the
/// tolerance, midnight-split activities, out-of-day entries and legs without
/// a defined speed are reported as QA flags.
TravelDiary build_diary(const Respondent& respondent, std::span<const DayEntries> days,
                        const DiaryOptions& options = {});

/// Merges one more day into an existing diary. Equivalent to rebuilding with
/// the extra day; validations already recorded on existing events are kept.
void add_day(TravelDiary& diary, Date day, std::span<const TimelineEntry> entries,
             const DiaryOptions& options = {});

/// Events belonging to `day`, as indices into diary.events.
std::vector<std::size_t> events_of_day(const TravelDiary& diary, Date day);

/// Recomputes the structural QA flags (everything except ShortDwell, which
/// is preserved as-is).
void refresh_structural_flags(TravelDiary& diary, const DiaryOptions& options = {});

struct ValidationResponse {
  struct Purpose {
    std::string text;
  };
  struct ModeResponse {
    std::string text;
  };
  std::size_t event_index = 0;
  std::variant<Purpose, ModeResponse> answer;
};

/// Applies all responses or none. Errors: IndexOutOfRange, KindMismatch
/// (purpose on a leg or mode on an activity), UnknownResponse (mode answer
/// outside the taxonomy, empty purpose, or WorkFromHome away from home).
TravelDiary apply_validation(const TravelDiary& diary, std::span<const ValidationResponse> responses);

/// True when every activity has a purpose and every leg a validated mode.
bool is_fully_validated(const TravelDiary& diary) noexcept;
bool is_day_validated(const TravelDiary& diary, Date day);

struct EventCensus {
  std::size_t activities = 0;
  std::size_t trip_legs = 0;

  EventCensus& operator+=(const EventCensus& o) noexcept {
    activities += o.activities;
    trip_legs += o.trip_legs;
    return *this;
  }
  friend bool operator==(const EventCensus&, const EventCensus&) = default;
};

EventCensus event_census(std::span<const TravelDiary> diaries) noexcept;

inline constexpr double kDefaultShortDwellS = 300.0;

/// Replaces ShortDwell flags: every activity strictly shorter than
/// threshold_s is flagged. Nothing is removed from the event list.
/// Throws Error(InvalidArgument) for a non-positive threshold.
TravelDiary flag_short_dwells(const TravelDiary& diary, double threshold_s = kDefaultShortDwellS);

/// Location heuristic behind the WorkFromHome constraint.
bool is_home_location(const ActivityDetails& a) noexcept;

}  // namespace glh

#endif  // GLH_DIARY_HPP
