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

// End-to-end checks of the shared library's C interface and of the CLI
// binary. Stores are seeded through the core library, everything else goes
// through the public surface.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>

#include <doctest.h>
#include <fmt/format.h>
#include <json.hpp>

#include "glh/io.hpp"
#include "glh/store.hpp"
#include "glhdiary/glhdiary.h"
#include "test_support.hpp"

using namespace glh;
using namespace glh::test;
using nlohmann::json;

namespace {

struct CliRun {
  int exit_code = -1;
  std::string err;
};

CliRun run_cli(const std::string& args, const TempDir& work) {
  const auto err_file = work / "stderr.txt";
  const std::string cmd = fmt::format("\"{}\" {} > /dev/null 2> \"{}\"", GLH_CLI_PATH, args, err_file.string());
  const int raw = std::system(cmd.c_str());
  CliRun r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.err = std::filesystem::exists(err_file) ? read_text_file(err_file) : "";
  return r;
}

std::string q(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

std::string take(char* s) {
  std::string out = s ? s : "";
  glh_string_free(s);
  return out;
}

// One respondent whose legs reproduce the published validation counts.
void seed_validation_store(const std::filesystem::path& root) {
  StoreRecord rec;
  rec.respondent = sample_respondent("t2");
  rec.diary.respondent_id = "t2";
  rec.diary.days = {sample_day_date()};
  Timestamp t = at("2023-07-02T04:00:00Z");
  for (auto& l : published_validation_legs()) {
    DiaryEvent ev;
    ev.window = {t, t + std::chrono::seconds(60)};
    ev.source_day = sample_day_date();
    l.path = {{43.70, -79.40}, {43.705, -79.40}};
    l.distance_m = 556.0;
    l.avg_speed_kmh = 33.36;
    ev.details = l;
    rec.diary.events.push_back(std::move(ev));
    t += std::chrono::seconds(60);
  }
  rec.phase = derive_phase(rec);
  persist(root, {rec});
}

// Validated legs whose mismatch follows a known logit model.
void seed_logit_store(const std::filesystem::path& root, const std::filesystem::path& zones_csv) {
  write_text(zones_csv,
             "zone_id,centroid_lat,centroid_lon,density_kppl_km2\n"
             "1,43.60,-79.60,0.8\n2,43.70,-79.40,3.5\n3,43.65,-79.38,9.0\n4,43.85,-79.30,1.6\n");
  const GeoPoint origins[] = {{43.60, -79.60}, {43.70, -79.40}, {43.65, -79.38}, {43.85, -79.30}};
  const double ln_density[] = {std::log(0.8), std::log(3.5), std::log(9.0), std::log(1.6)};
  const double beta[] = {1.0, -3.0, -2.0, -1.0, -2.5, 1.2, 0.6, -0.5, 0.3, 0.5, -0.4};

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<StoreRecord> records;
  for (int p = 0; p < 60; ++p) {
    StoreRecord rec;
    rec.respondent = sample_respondent(fmt::format("r{:03}", p));
    rec.respondent.age = p % 3 == 0 ? 24 : 45;
    rec.respondent.employment = p % 2 == 0 ? Employment::FullTime : Employment::PartTime;
    rec.diary.respondent_id = rec.respondent.id;
    rec.diary.days = {sample_day_date()};
    Timestamp t = at("2023-07-02T04:00:00Z");
    for (int k = 0; k < 50; ++k) {
      const Mode validated = kAllModes[static_cast<std::size_t>(rng() % 7)];
      const double speed = std::array{3.0, 12.0, 35.0}[rng() % 3];
      const double distance = u(rng) < 0.4 ? 6000.0 + 4000.0 * u(rng) : 500.0 + 4000.0 * u(rng);
      const std::size_t zone = rng() % 4;

      double eta = beta[0];
      eta += validated == Mode::Automobile ? beta[1] : 0.0;
      eta += validated == Mode::LocalTransit ? beta[2] : 0.0;
      eta += validated == Mode::RegionalTransit ? beta[3] : 0.0;
      eta += validated == Mode::Cycle || validated == Mode::Walk ? beta[4] : 0.0;
      eta += speed < 5 ? beta[5] : speed < 20 ? beta[6] : 0.0;
      eta += distance >= 5000 ? beta[7] : 0.0;
      eta += beta[8] * ln_density[zone];
      eta += rec.respondent.age < 30 ? beta[9] : 0.0;
      eta += rec.respondent.employment == Employment::FullTime ? beta[10] : 0.0;
      const bool mismatch = u(rng) < 1.0 / (1.0 + std::exp(-eta));

      const auto dur = std::chrono::seconds(static_cast<long>(std::lround(distance / 1000.0 / speed * 3600.0)));
      DiaryEvent ev;
      ev.window = {t, t + dur};
      ev.source_day = sample_day_date();
      LegDetails l;
      l.path = {origins[zone], {origins[zone].lat + 0.01, origins[zone].lon}};
      l.validated_mode = validated;
      l.inferred_mode = mismatch ? kAllModes[(static_cast<std::size_t>(validated) + 1 + rng() % 6) % 7] : validated;
      l.raw_mode_label = std::string(to_string(*l.inferred_mode));
      l.distance_m = distance;
      l.avg_speed_kmh = distance / 1000.0 / (ev.window.duration_s() / 3600.0);
      ev.details = l;
      rec.diary.events.push_back(std::move(ev));
      t += dur;
    }
    rec.phase = derive_phase(rec);
    records.push_back(std::move(rec));
  }
  persist(root, records);
}

}  // namespace

TEST_CASE("cli ingest on an empty directory yields an empty store") {
  TempDir work;
  std::filesystem::create_directories(work / "kml");
  write_text(work / "respondents.csv", "id,age,gender,household_size,employment\n");
  const auto r = run_cli(fmt::format("ingest --kml-dir {} --respondents-csv {} --out {}", q(work / "kml"),
                                     q(work / "respondents.csv"), q(work / "store")),
                         work);
  CHECK(r.exit_code == 0);
  glh_store* store = nullptr;
  REQUIRE(glh_store_open((work / "store").c_str(), 0, nullptr, &store) == GLH_OK);
  std::size_t n = 99;
  CHECK(glh_store_size(store, &n) == GLH_OK);
  CHECK(n == 0);
  glh_store_free(store);
}

TEST_CASE("cli confusion on a published-counts store reproduces the counts and margins") {
  TempDir work;
  seed_validation_store(work / "store");
  const auto r = run_cli(fmt::format("confusion --store {} --out {}", q(work / "store"), q(work / "m.csv")), work);
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(read_text_file(work / "m.csv"));
  std::string line;
  std::getline(lines, line);
  CHECK(line == "validated\\inferred,Automobile,Local Transit,Regional Transit,Taxi/Ridehail,Motorcycle,Cycle,"
                "Walk,Recall (%)");
  const char* labels[] = {"Automobile", "Local Transit", "Regional Transit", "Taxi/Ridehail",
                          "Motorcycle", "Cycle",         "Walk"};
  for (std::size_t v = 0; v < 7; ++v) {
    REQUIRE(std::getline(lines, line));
    std::string expected = labels[v];
    for (auto c : kValidationCounts[v]) expected += "," + std::to_string(c);
    expected += fmt::format(",{:.1f}", kPublishedRecallPct[v]);
    CHECK(line == expected);
  }
  REQUIRE(std::getline(lines, line));
  std::string expected = "Precision (%)";
  for (double p : kPublishedPrecisionPct) expected += fmt::format(",{:.1f}", p);
  CHECK(line.starts_with(expected));
}

TEST_CASE("cli logit on a synthetic store converges") {
  TempDir work;
  seed_logit_store(work / "store", work / "zones.csv");
  const auto r = run_cli(fmt::format("logit --store {} --zones {} --out {} --text-out {}", q(work / "store"),
                                     q(work / "zones.csv"), q(work / "fit.json"), q(work / "fit.txt")),
                         work);
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);
  const auto fit = json::parse(read_text_file(work / "fit.json"));
  CHECK(fit["converged"] == true);
  CHECK(fit["n_rows"] == 3000);
  CHECK(fit["rho_square"].get<double>() > 0.0);
  CHECK(fit["rho_square"].get<double>() < 1.0);
  CHECK(!read_text_file(work / "fit.txt").empty());
}

TEST_CASE("cli reports input errors with exit 1 and a JSON line") {
  TempDir work;
  const auto missing = run_cli(fmt::format("trips --store {} --out {}", q(work / "nope"), q(work / "t.csv")), work);
  CHECK(missing.exit_code == 1);
  const auto err = json::parse(missing.err.substr(0, missing.err.find('\n')));
  CHECK(err.contains("code"));
  CHECK(err.contains("message"));
  CHECK(err.contains("detail"));
  CHECK_FALSE(std::filesystem::exists(work / "t.csv"));

  TempDir other;
  std::filesystem::create_directories(other / "kml");
  write_text(other / "respondents.csv", "id,age,gender,household_size,employment\n");
  REQUIRE(run_cli(fmt::format("ingest --kml-dir {} --respondents-csv {} --out {}", q(other / "kml"),
                              q(other / "respondents.csv"), q(other / "store")),
                  other)
              .exit_code == 0);
  const auto unknown = run_cli(
      fmt::format("fragment --store {} --respondent ghost --date 2023-07-02", q(other / "store")), other);
  CHECK(unknown.exit_code == 1);
  CHECK(json::parse(unknown.err.substr(0, unknown.err.find('\n')))["code"] == "NotFound");

  const auto usage = run_cli("logit --store", work);
  CHECK(usage.exit_code != 0);
}

TEST_CASE("c api distinguishes input errors from internal ones") {
  glh_store* store = nullptr;
  CHECK(glh_store_open(nullptr, 1, nullptr, &store) == GLH_ERR_INPUT);
  CHECK(std::string(glh_last_error_code()) == "InvalidArgument");
  const auto err = json::parse(glh_last_error_json());
  CHECK(err["code"] == "InvalidArgument");

  double rho = 0.0;
  CHECK(glh_rho_square(-10.0, 5.0, &rho) == GLH_ERR_INPUT);
  CHECK(std::string(glh_last_error_code()) == "InvalidLikelihoods");
  CHECK(glh_rho_square(-689.09, -1209.84, &rho) == GLH_OK);
  CHECK(rho == doctest::Approx(0.4304).epsilon(1e-3));

  double rate = 0.0;
  CHECK(glh_trip_rate(5498, 290, 7, &rate) == GLH_OK);
  CHECK(std::round(rate * 100.0) / 100.0 == 2.71);
  CHECK(glh_trip_rate(1, 0, 7, &rate) == GLH_ERR_INPUT);

  CHECK(glh_haversine_m(43.7, -79.4, 43.7, -79.3) == doctest::Approx(8039.027388555).epsilon(1e-12));
}

TEST_CASE("c api store flow and server lifecycle") {
  TempDir work;
  glh_store* store = nullptr;
  REQUIRE(glh_store_open((work / "store").c_str(), 1, nullptr, &store) == GLH_OK);
  char* id = nullptr;
  REQUIRE(glh_respondent_add(store,
                             R"({"id":"p001","age":27,"gender":"Female","household_size":3,"employment":"FullTime"})",
                             &id) == GLH_OK);
  CHECK(take(id) == "p001");

  const std::string kml = sample_day_kml();
  char* frag = nullptr;
  REQUIRE(glh_upload_day(store, "p001", "2023-07-02", kml.data(), kml.size(), &frag) == GLH_OK);
  const std::string uploaded = take(frag);
  CHECK(json::parse(uploaded)["rows"].size() == 10);
  REQUIRE(glh_day_fragment(store, "p001", "2023-07-02", &frag) == GLH_OK);
  CHECK(take(frag) == uploaded);

  CHECK(glh_upload_day(store, "p001", "2023-07-02", kml.data(), kml.size(), &frag) == GLH_ERR_INPUT);
  CHECK(std::string(glh_last_error_code()) == "DuplicateDay");

  char* csv = nullptr;
  REQUIRE(glh_export_trips(store, &csv) == GLH_OK);
  const std::string trips = take(csv);
  CHECK(std::count(trips.begin(), trips.end(), '\n') == 6);

  glh_server* server = nullptr;
  REQUIRE(glh_server_start(store, "127.0.0.1", 0, nullptr, nullptr, &server) == GLH_OK);
  CHECK(glh_server_port(server) > 0);
  glh_server_stop(server);
  glh_server_wait(server);
  glh_server_free(server);
  glh_store_free(store);
}
