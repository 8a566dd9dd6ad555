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

#include "glh/diary.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>

#include "glh/error.hpp"

namespace glh {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::string_view, N>& names, std::string_view s) noexcept {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<E>(i);
  }
  return std::nullopt;
}

constexpr std::array<std::string_view, 3> kGender = {"Male", "Female", "Other"};
constexpr std::array<std::string_view, 3> kEmployment = {"FullTime", "PartTime", "NotEmployed"};
constexpr std::array<std::string_view, 4> kWorkplace = {"UsualPlace", "HomeOrHybrid",
                                                        "NoFixedPlace", "NotApplicable"};
constexpr std::array<std::string_view, 6> kIncome = {"Below40k",       "40kTo80k",
                                                     "80kTo125k",      "125kTo200k",
                                                     "200kAndAbove",   "DeclineUnknown"};
constexpr std::array<std::string_view, 6> kPurpose = {"Home",   "WorkFromHome",    "Work",
                                                      "School", "ShoppingErrands", "Other"};
constexpr std::array<std::string_view, 7> kQa = {"ShortDwell",     "OverlapWarning",
                                                 "MidnightSplit",  "OutOfDay",
                                                 "UndefinedSpeed", "UnlabeledLeg",
                                                 "InferredFallback"};

struct PurposeOption {
  std::string_view text;
  PurposeClass value;
};

constexpr PurposeOption kPurposeOptions[] = {
    {"Home", PurposeClass::Home},
    {"Working from home", PurposeClass::WorkFromHome},
    {"Work at usual workplace", PurposeClass::Work},
    {"Work-related (other location)", PurposeClass::Work},
    {"School", PurposeClass::School},
    {"Shopping & errands", PurposeClass::ShoppingErrands},
    {"Dine in restaurant, bar, coffee, etc.", PurposeClass::Other},
    {"Pick up meal & drive-through", PurposeClass::Other},
    {"Visiting family/friends (Day visit only)", PurposeClass::Other},
    {"Visiting family/friends (Overnight)", PurposeClass::Other},
    {"Personal services (bank, medical, etc.)", PurposeClass::Other},
    {"Recreation & entertainment", PurposeClass::Other},
    {"Drop off / pick up passenger", PurposeClass::Other},
    {"Other", PurposeClass::Other},
};

constexpr double kMidnightSplitRadiusM = 100.0;

DiaryEvent to_event(const TimelineEntry& e, Date day, const ModeMapper* mapper) {
  DiaryEvent ev;
  ev.window = e.window;
  ev.source_day = day;
  if (e.kind == EntryKind::PlaceVisit) {
    ActivityDetails a;
    a.name = e.name;
    a.address = e.address;
    a.location = e.path.front();
    a.glh_category = e.category;
    ev.details = std::move(a);
  } else {
    LegDetails l;
    l.path = e.path;
    l.raw_mode_label = e.raw_mode_label.value_or(e.name);
    l.inferred_mode = mapper ? mapper->map(l.raw_mode_label) : map_inferred_mode(l.raw_mode_label);
    l.distance_m = polyline_length_m(l.path);
    const double dur = e.window.duration_s();
    if (dur > 0.0) l.avg_speed_kmh = (l.distance_m / 1000.0) / (dur / 3600.0);
    ev.details = std::move(l);
  }
  return ev;
}

void sort_flags(std::vector<QaFlag>& flags) {
  std::stable_sort(flags.begin(), flags.end(), [](const QaFlag& a, const QaFlag& b) {
    if (a.event_index != b.event_index) return a.event_index < b.event_index;
    return a.code < b.code;
  });
}

std::string describe(const DiaryEvent& ev) {
  return ev.is_activity() ? "activity '" + ev.activity().name + "'"
                          : "leg '" + ev.leg().raw_mode_label + "'";
}

}  // namespace

std::string_view to_string(Gender g) noexcept { return kGender[static_cast<std::size_t>(g)]; }
std::string_view to_string(Employment e) noexcept { return kEmployment[static_cast<std::size_t>(e)]; }
std::string_view to_string(Workplace w) noexcept { return kWorkplace[static_cast<std::size_t>(w)]; }
std::string_view to_string(IncomeBand b) noexcept { return kIncome[static_cast<std::size_t>(b)]; }
std::string_view to_string(PurposeClass p) noexcept { return kPurpose[static_cast<std::size_t>(p)]; }
std::string_view to_string(QaCode c) noexcept { return kQa[static_cast<std::size_t>(c)]; }
std::string_view to_string(EventKind k) noexcept {
  return k == EventKind::Activity ? "Activity" : "TripLeg";
}

std::optional<Gender> gender_from_string(std::string_view s) noexcept {
  return lookup<Gender>(kGender, s);
}
std::optional<Employment> employment_from_string(std::string_view s) noexcept {
  return lookup<Employment>(kEmployment, s);
}
std::optional<Workplace> workplace_from_string(std::string_view s) noexcept {
  return lookup<Workplace>(kWorkplace, s);
}
std::optional<IncomeBand> income_band_from_string(std::string_view s) noexcept {
  return lookup<IncomeBand>(kIncome, s);
}
std::optional<PurposeClass> purpose_class_from_string(std::string_view s) noexcept {
  return lookup<PurposeClass>(kPurpose, s);
}
std::optional<QaCode> qa_code_from_string(std::string_view s) noexcept {
  return lookup<QaCode>(kQa, s);
}

bool is_valid_respondent_id(std::string_view id) noexcept {
  if (id.empty() || id.size() > 64 || id == "." || id == "..") return false;
  return std::all_of(id.begin(), id.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.';
  });
}

void validate(const Respondent& r) {
  if (!is_valid_respondent_id(r.id)) {
    throw Error(ErrorCode::InvalidArgument, "invalid respondent id '" + r.id + "'",
                {{"field", "id"}});
  }
  if (r.age < kMinimumAge) {
    throw Error(ErrorCode::InvalidArgument,
                "respondent " + r.id + " is younger than " + std::to_string(kMinimumAge),
                {{"field", "age"}, {"respondent_id", r.id}});
  }
  if (r.household_size < 1) {
    throw Error(ErrorCode::InvalidArgument, "household size must be at least 1",
                {{"field", "household_size"}, {"respondent_id", r.id}});
  }
  if (r.home_location && !is_valid(*r.home_location)) {
    throw Error(ErrorCode::InvalidArgument, "home location out of range",
                {{"field", "home_location"}, {"respondent_id", r.id}});
  }
}

const std::vector<std::string>& purpose_response_options() {
  static const std::vector<std::string> options = [] {
    std::vector<std::string> v;
    for (const auto& o : kPurposeOptions) v.emplace_back(o.text);
    return v;
  }();
  return options;
}

std::optional<ActivityPurpose> interpret_purpose_response(std::string_view response) {
  const std::string_view text = trim(response);
  if (text.empty()) return std::nullopt;
  const std::string lower = to_lower_ascii(text);
  for (const auto& o : kPurposeOptions) {
    if (to_lower_ascii(o.text) == lower) return ActivityPurpose{o.value, std::string(text)};
  }
  if (auto cls = purpose_class_from_string(text)) return ActivityPurpose{*cls, std::string(text)};
  return ActivityPurpose{PurposeClass::Other, std::string(text)};
}

bool is_home_location(const ActivityDetails& a) noexcept {
  return to_lower_ascii(a.glh_category) == "home" || to_lower_ascii(a.name).starts_with("home");
}

void refresh_structural_flags(TravelDiary& diary, const DiaryOptions& options) {
  std::erase_if(diary.qa_flags, [](const QaFlag& f) { return f.code != QaCode::ShortDwell; });
  const TimeZone tz = TimeZone::load(diary.time_zone);

  std::vector<bool> midnight_split(diary.events.size(), false);
  for (std::size_t i = 1; i < diary.events.size(); ++i) {
    const auto& prev = diary.events[i - 1];
    const auto& cur = diary.events[i];
    if (prev.is_activity() && cur.is_activity() && prev.source_day != cur.source_day &&
        prev.activity().name == cur.activity().name &&
        haversine_m(prev.activity().location, cur.activity().location) <= kMidnightSplitRadiusM) {
      midnight_split[i] = true;
      diary.qa_flags.push_back({i, QaCode::MidnightSplit,
                                "activity '" + cur.activity().name +
                                    "' continues a fragment from the previous day file"});
    }
  }

  std::optional<Timestamp> latest_end;
  for (std::size_t i = 0; i < diary.events.size(); ++i) {
    const auto& ev = diary.events[i];
    if (!intersects(ev.window, tz.day_bounds(ev.source_day))) {
      diary.qa_flags.push_back(
          {i, QaCode::OutOfDay, describe(ev) + " lies outside " + format_date(ev.source_day)});
    }
    if (latest_end && !midnight_split[i]) {
      const double overlap = std::chrono::duration<double>(*latest_end - ev.window.begin).count();
      if (overlap > options.overlap_tolerance_s) {
        diary.qa_flags.push_back({i, QaCode::OverlapWarning,
                                  describe(ev) + " overlaps the previous event by " +
                                      std::to_string(static_cast<long long>(overlap)) + " s"});
      }
    }
    if (!latest_end || ev.window.end > *latest_end) latest_end = ev.window.end;

    if (ev.is_leg()) {
      const auto& leg = ev.leg();
      if (!leg.avg_speed_kmh) {
        diary.qa_flags.push_back({i, QaCode::UndefinedSpeed, "zero-duration leg has no speed"});
      }
      if (!leg.inferred_mode && !leg.validated_mode) {
        diary.qa_flags.push_back(
            {i, QaCode::UnlabeledLeg, "leg label '" + leg.raw_mode_label + "' is unmapped"});
      }
    }
  }
  sort_flags(diary.qa_flags);
}

void add_day(TravelDiary& diary, Date day, std::span<const TimelineEntry> entries,
             const DiaryOptions& options) {
  if (std::find(diary.days.begin(), diary.days.end(), day) != diary.days.end()) {
    throw Error(ErrorCode::DuplicateDay, "day " + format_date(day) + " already in diary",
                {{"date", format_date(day)}, {"respondent_id", diary.respondent_id}});
  }
  constexpr std::size_t kNew = static_cast<std::size_t>(-1);
  std::vector<std::pair<DiaryEvent, std::size_t>> merged;
  merged.reserve(diary.events.size() + entries.size());
  for (std::size_t i = 0; i < diary.events.size(); ++i) {
    merged.emplace_back(std::move(diary.events[i]), i);
  }
  for (const auto& e : entries) merged.emplace_back(to_event(e, day, options.mode_mapper), kNew);

  // Same-day ties keep file order; ties across days follow the day order.
  std::stable_sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
    if (a.first.window.begin != b.first.window.begin) return a.first.window.begin < b.first.window.begin;
    return a.first.source_day < b.first.source_day;
  });

  std::vector<std::size_t> remap(diary.events.size(), 0);
  diary.events.clear();
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (merged[i].second != kNew) remap[merged[i].second] = i;
    diary.events.push_back(std::move(merged[i].first));
  }
  for (auto& f : diary.qa_flags) f.event_index = remap.at(f.event_index);

  diary.days.insert(std::upper_bound(diary.days.begin(), diary.days.end(), day), day);
  refresh_structural_flags(diary, options);
}

TravelDiary build_diary(const Respondent& respondent, std::span<const DayEntries> days,
                        const DiaryOptions& options) {
  TravelDiary diary;
  diary.respondent_id = respondent.id;
  diary.time_zone = options.time_zone;
  TimeZone::load(diary.time_zone);  // reject unknown zones up front
  for (const auto& [day, entries] : days) add_day(diary, day, entries, options);
  return diary;
}

std::vector<std::size_t> events_of_day(const TravelDiary& diary, Date day) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < diary.events.size(); ++i) {
    if (diary.events[i].source_day == day) out.push_back(i);
  }
  return out;
}

TravelDiary apply_validation(const TravelDiary& diary,
                             std::span<const ValidationResponse> responses) {
  TravelDiary out = diary;
  for (const auto& r : responses) {
    if (r.event_index >= out.events.size()) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "event index " + std::to_string(r.event_index) + " out of range",
                  {{"event_index", r.event_index}, {"event_count", out.events.size()}});
    }
    auto& ev = out.events[r.event_index];
    if (const auto* p = std::get_if<ValidationResponse::Purpose>(&r.answer)) {
      if (!ev.is_activity()) {
        throw Error(ErrorCode::KindMismatch, "purpose response aimed at a trip leg",
                    {{"event_index", r.event_index}});
      }
      auto purpose = interpret_purpose_response(p->text);
      if (!purpose) {
        throw Error(ErrorCode::UnknownResponse, "empty purpose response",
                    {{"event_index", r.event_index}});
      }
      if (purpose->value == PurposeClass::WorkFromHome && !is_home_location(ev.activity())) {
        throw Error(ErrorCode::UnknownResponse,
                    "working from home reported at a non-home location '" + ev.activity().name + "'",
                    {{"event_index", r.event_index}});
      }
      ev.activity().purpose = std::move(purpose);
    } else {
      const auto& m = std::get<ValidationResponse::ModeResponse>(r.answer);
      if (!ev.is_leg()) {
        throw Error(ErrorCode::KindMismatch, "mode response aimed at an activity",
                    {{"event_index", r.event_index}});
      }
      const auto mode = collapse_mode_response(m.text);
      if (!mode) {
        throw Error(ErrorCode::UnknownResponse, "unrecognised mode response '" + m.text + "'",
                    {{"event_index", r.event_index}, {"response", m.text}});
      }
      ev.leg().validated_mode = mode;
      ev.leg().mode_response = std::string(trim(m.text));
    }
  }
  std::erase_if(out.qa_flags, [&](const QaFlag& f) {
    return f.code == QaCode::UnlabeledLeg && out.events[f.event_index].leg().validated_mode;
  });
  return out;
}

bool is_fully_validated(const TravelDiary& diary) noexcept {
  return std::all_of(diary.events.begin(), diary.events.end(), [](const DiaryEvent& ev) {
    return ev.is_activity() ? ev.activity().purpose.has_value()
                            : ev.leg().validated_mode.has_value();
  });
}

bool is_day_validated(const TravelDiary& diary, Date day) {
  for (const auto& ev : diary.events) {
    if (ev.source_day != day) continue;
    if (ev.is_activity() ? !ev.activity().purpose : !ev.leg().validated_mode) return false;
  }
  return true;
}

EventCensus event_census(std::span<const TravelDiary> diaries) noexcept {
  EventCensus c;
  for (const auto& d : diaries) {
    for (const auto& ev : d.events) {
      if (ev.is_activity()) {
        ++c.activities;
      } else {
        ++c.trip_legs;
      }
    }
  }
  return c;
}

TravelDiary flag_short_dwells(const TravelDiary& diary, double threshold_s) {
  if (!(threshold_s > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "short-dwell threshold must be positive",
                {{"threshold_s", threshold_s}});
  }
  TravelDiary out = diary;
  std::erase_if(out.qa_flags, [](const QaFlag& f) { return f.code == QaCode::ShortDwell; });
  for (std::size_t i = 0; i < out.events.size(); ++i) {
    const auto& ev = out.events[i];
    if (ev.is_activity() && ev.duration_s() < threshold_s) {
      out.qa_flags.push_back({i, QaCode::ShortDwell,
                              "activity '" + ev.activity().name + "' lasted " +
                                  std::to_string(static_cast<long long>(ev.duration_s())) + " s"});
    }
  }
  sort_flags(out.qa_flags);
  return out;
}

}  // namespace glh
