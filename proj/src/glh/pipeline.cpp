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

#include "glh/pipeline.hpp"

#include <algorithm>
#include <regex>

#include <unistd.h>

#include "glh/csv.hpp"
#include "glh/error.hpp"
#include "glh/io.hpp"
#include "glh/kml.hpp"
#include "glh/serialize.hpp"

namespace glh {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void bad_cell(const fs::path& file, std::size_t line, std::string_view column,
                           const std::string& why) {
  throw Error(ErrorCode::InvalidArgument,
              file.filename().string() + " line " + std::to_string(line) + ", " +
                  std::string(column) + ": " + why,
              {{"file", file.string()}, {"line", line}, {"column", std::string(column)}});
}

int parse_int_cell(const fs::path& file, const csv::Row& row, std::string_view column) {
  const std::string& cell = row[column];
  try {
    std::size_t used = 0;
    const int v = std::stoi(cell, &used);
    if (used == cell.size()) return v;
  } catch (const std::exception&) {
  }
  bad_cell(file, row.line(), column, "expected an integer, got '" + cell + "'");
}

double parse_double_cell(const fs::path& file, const csv::Row& row, std::string_view column) {
  const std::string& cell = row[column];
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used == cell.size()) return v;
  } catch (const std::exception&) {
  }
  bad_cell(file, row.line(), column, "expected a number, got '" + cell + "'");
}

template <typename E>
E parse_enum_cell(const fs::path& file, const csv::Row& row, std::string_view column,
                  std::optional<E> (*parse)(std::string_view) noexcept) {
  const auto v = parse(row[column]);
  if (!v) bad_cell(file, row.line(), column, "unknown value '" + row[column] + "'");
  return *v;
}

}  // namespace

std::vector<Respondent> read_respondents_csv(const fs::path& path) {
  const csv::Table t = csv::read_file(path);
  std::vector<Respondent> out;
  for (const auto& row : t.rows) {
    Respondent r;
    r.id = row["id"];
    r.age = parse_int_cell(path, row, "age");
    r.gender = parse_enum_cell<Gender>(path, row, "gender", gender_from_string);
    r.household_size = parse_int_cell(path, row, "household_size");
    r.employment = parse_enum_cell<Employment>(path, row, "employment", employment_from_string);
    if (!row["workplace_arrangement"].empty()) {
      r.workplace =
          parse_enum_cell<Workplace>(path, row, "workplace_arrangement", workplace_from_string);
    }
    if (!row["income_band"].empty()) {
      r.income_band = parse_enum_cell<IncomeBand>(path, row, "income_band", income_band_from_string);
    }
    if (!row["home_lat"].empty() || !row["home_lon"].empty()) {
      r.home_location = GeoPoint{parse_double_cell(path, row, "home_lat"),
                                 parse_double_cell(path, row, "home_lon")};
    }
    try {
      validate(r);
    } catch (const Error& e) {
      bad_cell(path, row.line(), e.detail().value("field", "id"), e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::map<std::string, std::vector<ValidationResponse>> read_validations_csv(const fs::path& path) {
  const csv::Table t = csv::read_file(path);
  std::map<std::string, std::vector<ValidationResponse>> out;
  for (const auto& row : t.rows) {
    ValidationResponse r;
    const int idx = parse_int_cell(path, row, "event_index");
    if (idx < 0) bad_cell(path, row.line(), "event_index", "negative index");
    r.event_index = static_cast<std::size_t>(idx);
    const bool has_purpose = !row["purpose"].empty();
    const bool has_mode = !row["mode_response"].empty();
    if (has_purpose == has_mode) {
      bad_cell(path, row.line(), "purpose|mode_response", "exactly one must be set");
    }
    if (has_purpose) {
      r.answer = ValidationResponse::Purpose{row["purpose"]};
    } else {
      r.answer = ValidationResponse::ModeResponse{row["mode_response"]};
    }
    out[row["respondent_id"]].push_back(std::move(r));
  }
  return out;
}

json upload_day(Store& store, const std::string& respondent_id, Date day,
                std::string_view kml_bytes, const PipelineOptions& options) {
  // Unknown respondents are reported before any parse error.
  if (!store.contains(respondent_id)) {
    throw Error(ErrorCode::NotFound, "unknown respondent '" + respondent_id + "'",
                {{"respondent_id", respondent_id}});
  }
  const auto entries = parse_kml(kml_bytes);
  return store.update(respondent_id, [&](StoreRecord& r) {
    if (r.raw_files.contains(day)) {
      throw Error(ErrorCode::DuplicateDay, "day " + format_date(day) + " already uploaded",
                  {{"date", format_date(day)}, {"respondent_id", respondent_id}});
    }
    add_day(r.diary, day, entries, options.diary_options());
    r.diary = flag_short_dwells(r.diary, options.short_dwell_s);
    r.raw_files.emplace(day, std::string(kml_bytes));
    return day_fragment(r.diary, day);
  });
}

json respondent_status(const StoreRecord& record) {
  json days = json::array();
  std::size_t validated_events = 0;
  for (const auto& ev : record.diary.events) {
    if (ev.is_activity() ? ev.activity().purpose.has_value() : ev.leg().validated_mode.has_value()) {
      ++validated_events;
    }
  }
  for (const auto& day : record.diary.days) {
    days.push_back({{"date", format_date(day)},
                    {"events", events_of_day(record.diary, day).size()},
                    {"validated", is_day_validated(record.diary, day)}});
  }
  return json{{"id", record.respondent.id},
              {"phase", std::string(to_string(record.phase))},
              {"setup_declared", record.setup_declared},
              {"days", std::move(days)},
              {"total_events", record.diary.events.size()},
              {"validated_events", validated_events}};
}

json submit_validations(Store& store, const std::string& respondent_id,
                        const std::vector<ValidationResponse>& responses) {
  store.update(respondent_id, [&](StoreRecord& r) { r.diary = apply_validation(r.diary, responses); });
  return respondent_status(store.get(respondent_id));
}

std::optional<Date> date_from_filename(std::string_view filename) {
  static const std::regex kDate(R"((\d{4})-(\d{1,2})-(\d{1,2}))");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_search(filename.begin(), filename.end(), m, kDate)) return std::nullopt;
  return parse_date(std::string_view(&*m[0].first, static_cast<std::size_t>(m[0].length())));
}

namespace {
IngestSummary ingest_into(const fs::path& root, const std::vector<Respondent>& respondents,
                          std::map<std::string, std::vector<std::pair<Date, fs::path>>>& files,
                          const std::map<std::string, std::vector<ValidationResponse>>& validations,
                          const PipelineOptions& options);
}  // namespace

IngestSummary ingest(const fs::path& kml_dir, const fs::path& respondents_csv,
                     const std::optional<fs::path>& validations_csv, const fs::path& store_root,
                     const PipelineOptions& options) {
  if (!fs::is_directory(kml_dir)) {
    throw Error(ErrorCode::InvalidArgument, "KML directory " + kml_dir.string() + " not found",
                {{"path", kml_dir.string()}});
  }
  TimeZone::load(options.time_zone);
  const auto respondents = read_respondents_csv(respondents_csv);
  std::map<std::string, std::vector<ValidationResponse>> validations;
  if (validations_csv) validations = read_validations_csv(*validations_csv);

  // Gather and check all inputs before touching the store.
  std::map<std::string, std::vector<std::pair<Date, fs::path>>> files;
  for (const auto& entry : fs::directory_iterator(kml_dir)) {
    if (!entry.is_directory()) continue;
    const std::string id = entry.path().filename().string();
    const bool known = std::any_of(respondents.begin(), respondents.end(),
                                   [&](const Respondent& r) { return r.id == id; });
    if (!known) {
      throw Error(ErrorCode::InvalidArgument,
                  "KML directory for respondent '" + id + "' not in respondents file",
                  {{"respondent_id", id}});
    }
    auto& list = files[id];
    for (const auto& f : fs::directory_iterator(entry.path())) {
      if (!f.is_regular_file() || to_lower_ascii(f.path().extension().string()) != ".kml") continue;
      const auto day = date_from_filename(f.path().filename().string());
      if (!day) {
        throw Error(ErrorCode::InvalidArgument,
                    "no YYYY-MM-DD date in file name " + f.path().filename().string(),
                    {{"file", f.path().string()}});
      }
      list.emplace_back(*day, f.path());
    }
    std::sort(list.begin(), list.end());
  }
  for (const auto& [id, _] : validations) {
    const bool known = std::any_of(respondents.begin(), respondents.end(),
                                   [&](const Respondent& r) { return r.id == id; });
    if (!known) {
      throw Error(ErrorCode::InvalidArgument, "validations for unknown respondent '" + id + "'",
                  {{"respondent_id", id}});
    }
  }

  // A fresh store is assembled beside its destination and renamed into
  // place, so a failed ingest leaves nothing behind.
  const bool fresh = !fs::exists(store_root);
  const fs::path work_root =
      fresh ? fs::path(store_root.string() + ".partial." + std::to_string(::getpid())) : store_root;
  if (fresh) fs::remove_all(work_root);
  try {
    const IngestSummary summary =
        ingest_into(work_root, respondents, files, validations, options);
    if (fresh) fs::rename(work_root, store_root);
    return summary;
  } catch (...) {
    if (fresh) {
      std::error_code ec;
      fs::remove_all(work_root, ec);
    }
    throw;
  }
}

namespace {

IngestSummary ingest_into(const fs::path& root, const std::vector<Respondent>& respondents,
                          std::map<std::string, std::vector<std::pair<Date, fs::path>>>& files,
                          const std::map<std::string, std::vector<ValidationResponse>>& validations,
                          const PipelineOptions& options) {
  Store store(root, /*create=*/true);
  IngestSummary summary;
  for (const auto& r : respondents) {
    StoreRecord record;
    record.respondent = r;
    record.setup_declared = true;
    record.diary.respondent_id = r.id;
    record.diary.time_zone = options.time_zone;
    store.add(std::move(record));
    ++summary.respondents;
    for (const auto& [day, path] : files[r.id]) {
      try {
        upload_day(store, r.id, day, read_text_file(path), options);
      } catch (const Error& e) {
        auto detail = e.detail();
        detail["file"] = path.string();
        throw Error(e.code(), path.filename().string() + ": " + e.what(), std::move(detail));
      }
      ++summary.days;
    }
    if (const auto it = validations.find(r.id); it != validations.end()) {
      submit_validations(store, r.id, it->second);
    }
    summary.events += store.get(r.id).diary.events.size();
  }
  return summary;
}

}  // namespace

}  // namespace glh
