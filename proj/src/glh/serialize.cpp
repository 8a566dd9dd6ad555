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

#include "glh/serialize.hpp"

#include "glh/error.hpp"

namespace glh {

using nlohmann::json;

namespace {

[[noreturn]] void bad_field(std::string_view field, const std::string& why) {
  throw Error(ErrorCode::InvalidArgument, "field '" + std::string(field) + "': " + why,
              {{"field", std::string(field)}});
}

const json& require(const json& j, std::string_view field) {
  if (!j.is_object()) bad_field(field, "expected an object");
  const auto it = j.find(std::string(field));
  if (it == j.end()) bad_field(field, "missing");
  return *it;
}

template <typename T>
T get_as(const json& j, std::string_view field) {
  try {
    return require(j, field).get<T>();
  } catch (const json::exception& e) {
    bad_field(field, e.what());
  }
}

template <typename E>
E get_enum(const json& j, std::string_view field, std::optional<E> (*parse)(std::string_view) noexcept) {
  const auto s = get_as<std::string>(j, field);
  const auto v = parse(s);
  if (!v) bad_field(field, "unknown value '" + s + "'");
  return *v;
}

Timestamp get_time(const json& j, std::string_view field) {
  const auto s = get_as<std::string>(j, field);
  const auto t = parse_timestamp(s);
  if (!t) bad_field(field, "bad timestamp '" + s + "'");
  return *t;
}

Date get_date(const json& j, std::string_view field) {
  const auto s = get_as<std::string>(j, field);
  const auto d = parse_date(s);
  if (!d) bad_field(field, "bad date '" + s + "'");
  return *d;
}

json optional_string(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

json optional_mode(const std::optional<Mode>& m) {
  return m ? json(std::string(to_string(*m))) : json(nullptr);
}

std::optional<Mode> get_optional_mode(const json& j, std::string_view field) {
  const auto& v = require(j, field);
  if (v.is_null()) return std::nullopt;
  const auto m = mode_from_string(v.get<std::string>());
  if (!m) bad_field(field, "unknown mode");
  return m;
}

json event_to_json(const DiaryEvent& ev) {
  json j;
  j["kind"] = std::string(to_string(ev.kind()));
  j["begin"] = format_timestamp(ev.window.begin);
  j["end"] = format_timestamp(ev.window.end);
  j["duration_s"] = ev.duration_s();
  j["source_day"] = format_date(ev.source_day);
  if (ev.is_activity()) {
    const auto& a = ev.activity();
    j["name"] = a.name;
    j["address"] = optional_string(a.address);
    j["location"] = to_json(a.location);
    j["glh_category"] = a.glh_category;
    j["purpose"] = a.purpose ? json{{"class", std::string(to_string(a.purpose->value))},
                                    {"subtype", a.purpose->subtype}}
                             : json(nullptr);
  } else {
    const auto& l = ev.leg();
    json path = json::array();
    for (const auto& p : l.path) path.push_back(json::array({p.lat, p.lon}));
    j["path"] = std::move(path);
    j["raw_mode_label"] = l.raw_mode_label;
    j["inferred_mode"] = optional_mode(l.inferred_mode);
    j["validated_mode"] = optional_mode(l.validated_mode);
    j["mode_response"] = l.mode_response;
    j["distance_m"] = l.distance_m;
    j["avg_speed_kmh"] = l.avg_speed_kmh ? json(*l.avg_speed_kmh) : json(nullptr);
  }
  return j;
}

DiaryEvent event_from_json(const json& j) {
  DiaryEvent ev;
  ev.window = {get_time(j, "begin"), get_time(j, "end")};
  ev.source_day = get_date(j, "source_day");
  const auto kind = get_as<std::string>(j, "kind");
  if (kind == "Activity") {
    ActivityDetails a;
    a.name = get_as<std::string>(j, "name");
    const auto& addr = require(j, "address");
    if (!addr.is_null()) a.address = addr.get<std::string>();
    a.location = geo_point_from_json(require(j, "location"));
    a.glh_category = get_as<std::string>(j, "glh_category");
    const auto& purpose = require(j, "purpose");
    if (!purpose.is_null()) {
      a.purpose = ActivityPurpose{get_enum<PurposeClass>(purpose, "class", purpose_class_from_string),
                                  get_as<std::string>(purpose, "subtype")};
    }
    ev.details = std::move(a);
  } else if (kind == "TripLeg") {
    LegDetails l;
    for (const auto& p : require(j, "path")) {
      if (!p.is_array() || p.size() != 2) bad_field("path", "expected [lat, lon] pairs");
      l.path.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    l.raw_mode_label = get_as<std::string>(j, "raw_mode_label");
    l.inferred_mode = get_optional_mode(j, "inferred_mode");
    l.validated_mode = get_optional_mode(j, "validated_mode");
    l.mode_response = get_as<std::string>(j, "mode_response");
    l.distance_m = get_as<double>(j, "distance_m");
    const auto& speed = require(j, "avg_speed_kmh");
    if (!speed.is_null()) l.avg_speed_kmh = speed.get<double>();
    ev.details = std::move(l);
  } else {
    bad_field("kind", "unknown event kind '" + kind + "'");
  }
  return ev;
}

}  // namespace

json to_json(const GeoPoint& p) { return json{{"lat", p.lat}, {"lon", p.lon}}; }

GeoPoint geo_point_from_json(const json& j) {
  GeoPoint p{get_as<double>(j, "lat"), get_as<double>(j, "lon")};
  if (!is_valid(p)) bad_field("lat/lon", "coordinate out of range");
  return p;
}

json to_json(const Respondent& r) {
  return json{{"id", r.id},
              {"age", r.age},
              {"gender", std::string(to_string(r.gender))},
              {"household_size", r.household_size},
              {"employment", std::string(to_string(r.employment))},
              {"workplace_arrangement", std::string(to_string(r.workplace))},
              {"income_band", std::string(to_string(r.income_band))},
              {"home_location", r.home_location ? to_json(*r.home_location) : json(nullptr)}};
}

Respondent respondent_from_json(const json& j) {
  if (!j.is_object()) bad_field("respondent", "expected an object");
  Respondent r;
  if (j.contains("id") && !j["id"].is_null()) r.id = get_as<std::string>(j, "id");
  r.age = get_as<int>(j, "age");
  r.gender = get_enum<Gender>(j, "gender", gender_from_string);
  r.household_size = get_as<int>(j, "household_size");
  r.employment = get_enum<Employment>(j, "employment", employment_from_string);
  if (j.contains("workplace_arrangement")) {
    r.workplace = get_enum<Workplace>(j, "workplace_arrangement", workplace_from_string);
  }
  if (j.contains("income_band")) {
    r.income_band = get_enum<IncomeBand>(j, "income_band", income_band_from_string);
  }
  if (j.contains("home_location") && !j["home_location"].is_null()) {
    r.home_location = geo_point_from_json(j["home_location"]);
  }
  return r;
}

json to_json(const TravelDiary& d) {
  json days = json::array();
  for (const auto& day : d.days) days.push_back(format_date(day));
  json events = json::array();
  for (const auto& ev : d.events) events.push_back(event_to_json(ev));
  json flags = json::array();
  for (const auto& f : d.qa_flags) {
    flags.push_back({{"event_index", f.event_index},
                     {"code", std::string(to_string(f.code))},
                     {"message", f.message}});
  }
  return json{{"schema", std::string(kDiarySchema)},
              {"respondent_id", d.respondent_id},
              {"time_zone", d.time_zone},
              {"days", std::move(days)},
              {"events", std::move(events)},
              {"qa_flags", std::move(flags)}};
}

TravelDiary diary_from_json(const json& j) {
  const auto schema = get_as<std::string>(j, "schema");
  if (schema != kDiarySchema) {
    throw Error(ErrorCode::SchemaVersionMismatch,
                "diary schema '" + schema + "' is not " + std::string(kDiarySchema),
                {{"found", schema}, {"expected", std::string(kDiarySchema)}});
  }
  TravelDiary d;
  d.respondent_id = get_as<std::string>(j, "respondent_id");
  d.time_zone = get_as<std::string>(j, "time_zone");
  for (const auto& day : require(j, "days")) {
    const auto parsed = parse_date(day.get<std::string>());
    if (!parsed) bad_field("days", "bad date");
    d.days.push_back(*parsed);
  }
  for (const auto& ev : require(j, "events")) d.events.push_back(event_from_json(ev));
  for (const auto& f : require(j, "qa_flags")) {
    QaFlag flag;
    flag.event_index = get_as<std::size_t>(f, "event_index");
    flag.code = get_enum<QaCode>(f, "code", qa_code_from_string);
    flag.message = get_as<std::string>(f, "message");
    if (flag.event_index >= d.events.size()) bad_field("qa_flags", "event index out of range");
    d.qa_flags.push_back(std::move(flag));
  }
  return d;
}

json day_fragment(const TravelDiary& d, Date day) {
  const TimeZone tz = TimeZone::load(d.time_zone);
  json rows = json::array();
  std::size_t activities = 0;
  std::size_t legs = 0;
  for (std::size_t i = 0; i < d.events.size(); ++i) {
    const auto& ev = d.events[i];
    if (ev.source_day != day) continue;
    json row = event_to_json(ev);
    row["event_index"] = i;
    row["date"] = format_date(tz.local_date(ev.window.begin));
    row["time"] = tz.local_hhmm(ev.window.begin);
    if (ev.is_activity()) {
      ++activities;
      row["row_kind"] = "ActivityRow";
      row["display_address"] = ev.activity().address.value_or("");
      row["display_name"] = ev.activity().name;
      row["prompt"] = std::string(kPurposePrompt);
    } else {
      ++legs;
      row["row_kind"] = "LegRow";
      row["display_address"] = "N/A";
      row["display_name"] = ev.leg().raw_mode_label;
      row["prompt"] = std::string(kModePrompt);
    }
    row.erase("path");
    rows.push_back(std::move(row));
  }
  json flags = json::array();
  for (const auto& f : d.qa_flags) {
    if (f.event_index < d.events.size() && d.events[f.event_index].source_day == day) {
      flags.push_back({{"event_index", f.event_index},
                       {"code", std::string(to_string(f.code))},
                       {"message", f.message}});
    }
  }
  return json{{"schema", std::string(kFragmentSchema)},
              {"respondent_id", d.respondent_id},
              {"date", format_date(day)},
              {"time_zone", d.time_zone},
              {"rows", std::move(rows)},
              {"qa_flags", std::move(flags)},
              {"summary", {{"activities", activities}, {"trip_legs", legs}}}};
}

std::vector<ValidationResponse> validations_from_json(const json& j) {
  const json* items = &j;
  if (j.is_object()) items = &require(j, "responses");
  if (!items->is_array()) bad_field("responses", "expected an array");
  std::vector<ValidationResponse> out;
  for (const auto& item : *items) {
    ValidationResponse r;
    const auto idx = require(item, "event_index");
    if (!idx.is_number_unsigned() && !(idx.is_number_integer() && idx.get<long long>() >= 0)) {
      bad_field("event_index", "expected a non-negative integer");
    }
    r.event_index = idx.get<std::size_t>();
    const bool has_purpose = item.contains("purpose") && !item["purpose"].is_null();
    const bool has_mode = item.contains("mode_response") && !item["mode_response"].is_null();
    if (has_purpose == has_mode) {
      bad_field("purpose|mode_response", "exactly one of purpose or mode_response is required");
    }
    if (has_purpose) {
      r.answer = ValidationResponse::Purpose{get_as<std::string>(item, "purpose")};
    } else {
      r.answer = ValidationResponse::ModeResponse{get_as<std::string>(item, "mode_response")};
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

std::string dump_pretty(const json& j) {
  return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

}  // namespace glh
