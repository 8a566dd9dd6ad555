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

// Acceptance runner: one PASS/FAIL line per primary criterion, each with its
// measured values and wall time against the criterion's time limit.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "checks.hpp"
#include "glh/io.hpp"
#include "glh/kml.hpp"
#include "glh/pipeline.hpp"
#include "glh/serialize.hpp"
#include "glh/service.hpp"
#include "glh/trips.hpp"
#include "test_support.hpp"

// Last: httplib pulls in <resolv.h>, whose _res macro breaks Eigen headers.
#include <httplib.h>

using namespace glh;
using namespace glh::test;

namespace {

CheckResult check_sample_day_end_to_end() {
  CheckResult res;
  const std::string kml = sample_day_kml();
  const Date day = sample_day_date();
  const auto tz = TimeZone::load("America/Toronto");

  // Parsed entries: names and local times as published.
  const auto entries = parse_kml(kml);
  struct Row {
    const char* name_prefix;
    const char* begin;
    const char* end;
  };
  const Row rows[] = {{"Golden Court Plaza", "13:30", "14:26"}, {"Driving", "14:26", "14:29"},
                      {"Mikaku Udon Bar", "14:29", "14:55"},    {"Driving", "14:55", "14:59"},
                      {"Home", "14:59", "15:44"},               {"Driving", "15:44", "15:47"},
                      {"The Alley Hub", "15:47", "15:57"},      {"Driving", "15:57", "16:08"},
                      {"46 Burgundy Trail", "16:08", "17:57"},  {"Driving", "17:57", "18:06"}};
  if (entries.size() != 10) return {false, 1, fmt::format("{} entries parsed", entries.size())};
  std::size_t visits = 0, moves = 0;
  for (std::size_t i = 0; i < 10; ++i) {
    ++res.cases;
    const auto& e = entries[i];
    (e.kind == EntryKind::PlaceVisit ? visits : moves)++;
    if (!e.name.starts_with(rows[i].name_prefix) || tz.local_hhmm(e.window.begin) != rows[i].begin ||
        tz.local_hhmm(e.window.end) != rows[i].end) {
      return {false, res.cases, fmt::format("row {} is '{}' {}-{}", i, e.name, tz.local_hhmm(e.window.begin),
                                            tz.local_hhmm(e.window.end))};
    }
  }
  if (visits != 5 || moves != 5) return {false, res.cases, "expected 5 visits and 5 movements"};

  const std::vector<DayEntries> days = {{day, entries}};
  const auto trips = aggregate(build_diary(sample_respondent(), days));
  ++res.cases;
  if (trips.size() != 5) return {false, res.cases, fmt::format("{} trips", trips.size())};
  for (const auto& t : trips) {
    if (t.category != TripCategory::SingleMode || t.main_mode != Mode::Automobile || t.access_mode != Mode::Walk ||
        t.egress_mode != Mode::Walk) {
      return {false, res.cases, "a trip is not single-mode Automobile with Walk access/egress"};
    }
  }

  // CLI path: ingest a one-respondent directory, then print the day.
  TempDir work;
  write_text(work / "kml/p001/history-2023-07-02.kml", kml);
  write_text(work / "respondents.csv",
             "id,age,gender,household_size,employment\np001,27,Female,3,FullTime\n");
  const std::string cli = GLH_CLI_PATH;
  const std::string ingest = fmt::format("\"{}\" ingest --kml-dir \"{}\" --respondents-csv \"{}\" --out \"{}\" > /dev/null",
                                         cli, (work / "kml").string(), (work / "respondents.csv").string(),
                                         (work / "store").string());
  const std::string fragment = fmt::format("\"{}\" fragment --store \"{}\" --respondent p001 --date 2023-07-02 --out \"{}\"",
                                           cli, (work / "store").string(), (work / "cli.json").string());
  if (std::system(ingest.c_str()) != 0 || std::system(fragment.c_str()) != 0) {
    return {false, res.cases, "CLI invocation failed"};
  }
  const std::string cli_bytes = read_text_file(work / "cli.json");

  // HTTP path: a live server on a fresh store.
  Store store(work / "http-store", true);
  Service service(store, {});
  const int port = service.bind("127.0.0.1", 0);
  std::thread server([&] { service.listen_after_bind(); });
  httplib::Client client("127.0.0.1", port);
  auto reg = client.Post("/respondents",
                         R"({"id":"p001","age":27,"gender":"Female","household_size":3,"employment":"FullTime"})",
                         "application/json");
  auto up = client.Post("/respondents/p001/days/2023-07-02/kml", kml, "application/vnd.google-earth.kml+xml");
  service.stop();
  server.join();
  ++res.cases;
  if (!reg || reg->status != 201 || !up || up->status != 201) return {false, res.cases, "HTTP upload failed"};
  const auto body = nlohmann::json::parse(up->body);
  if (body["rows"].size() != 10) return {false, res.cases, "HTTP fragment does not have 10 rows"};
  res.ok = up->body == cli_bytes;
  res.detail = res.ok ? fmt::format("10 rows, 5 Automobile trips, HTTP and CLI fragments identical ({} bytes)",
                                    cli_bytes.size())
                      : "HTTP fragment differs from the CLI fragment";
  return res;
}

struct Criterion {
  std::string name;
  double limit_s;
  std::function<CheckResult()> run;
};

CheckResult property_suites() {
  const std::size_t n = 250;
  const CheckResult parts[] = {
      prop_histogram_conservation(n, 101), prop_mode_share_normalised(n, 102),
      prop_haversine_symmetry_identity(n, 103), prop_persistence_round_trip(n, 104),
      prop_confusion_order_invariance(n, 105)};
  const char* names[] = {"histogram", "mode share", "haversine", "persistence", "confusion order"};
  CheckResult all;
  std::string summary;
  for (std::size_t i = 0; i < 5; ++i) {
    all.cases += parts[i].cases;
    const bool ok = parts[i].ok && parts[i].cases >= 200;
    all.ok = all.ok && ok;
    summary += fmt::format("{}{} {}/{}", i ? ", " : "", names[i], ok ? "ok" : "FAILED", parts[i].cases);
    if (!parts[i].ok) summary += " (" + parts[i].detail + ")";
  }
  all.detail = summary;
  return all;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"Validation matrix precision and recall", 1.0, check_validation_margins},
      {"Constant-only log-likelihood", 1.0, check_constant_only_ll},
      {"Rho-square", 1.0, check_rho_square},
      {"Logit recovery (simulation, gradient, monotone LL)", 10.0, [] { return check_logit_recovery(); }},
      {"Trip-aggregation oracle equivalence", 5.0, check_trip_oracle},
      {"Trip rate arithmetic", 1.0, check_trip_rate},
      {"Sample day end to end", 1.0, check_sample_day_end_to_end},
      {"Property suites", 30.0, property_suites},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, 0, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = r.ok && in_time;
    failures += pass ? 0 : 1;
    std::cout << fmt::format("{} | {} | {} | {:.3f}s (limit {:.0f}s){}\n", pass ? "PASS" : "FAIL", c.name, r.detail,
                             secs, c.limit_s, in_time ? "" : " TOO SLOW");
  }
  std::cout << fmt::format("{} of {} primary criteria passed\n", criteria.size() - static_cast<std::size_t>(failures),
                           criteria.size());
  return failures == 0 ? 0 : 1;
}
