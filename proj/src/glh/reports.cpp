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

#include "glh/reports.hpp"

#include <cmath>

#include <fmt/format.h>

#include "glh/confusion.hpp"
#include "glh/error.hpp"
#include "glh/trips.hpp"

namespace glh {

using nlohmann::json;

namespace {

std::string opt_mode(const std::optional<Mode>& m) {
  return m ? std::string(to_string(*m)) : std::string("Unlabeled");
}

json edge_json(double e) { return std::isinf(e) ? json(nullptr) : json(e); }

json opt_ratio(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string trips_csv(std::span<const StoreRecord> records) {
  std::string out =
      "respondent_id,trip_index,category,main_mode,access_mode,egress_mode,distance_m,duration_s,"
      "depart,arrive,origin_lat,origin_lon,dest_lat,dest_lon\n";
  for (const auto& r : records) {
    const auto trips = aggregate(r.diary);
    for (std::size_t i = 0; i < trips.size(); ++i) {
      const Trip& t = trips[i];
      out += fmt::format("{},{},{},{},{},{},{:.3f},{:.3f},{},{},{:.6f},{:.6f},{:.6f},{:.6f}\n",
                         r.respondent.id, i, to_string(t.category), opt_mode(t.main_mode),
                         opt_mode(t.access_mode), opt_mode(t.egress_mode), t.distance_m,
                         t.duration_s, format_timestamp(t.depart), format_timestamp(t.arrive),
                         t.origin.lat, t.origin.lon, t.destination.lat, t.destination.lon);
    }
  }
  return out;
}

json histogram_json(const Histogram& h) {
  json edges = json::array();
  for (double e : h.bin_edges) edges.push_back(edge_json(e));
  return json{{"bin_edges", std::move(edges)},
              {"counts", h.counts},
              {"shares", h.shares()},
              {"total", h.total()}};
}

std::string histogram_csv(const Histogram& h) {
  std::string out = "lower,upper,count,share\n";
  const auto shares = h.shares();
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double hi = h.bin_edges[i + 1];
    out += fmt::format("{},{},{},{:.6f}\n", h.bin_edges[i], std::isinf(hi) ? std::string("inf") : fmt::format("{}", hi),
                       h.counts[i], shares[i]);
  }
  return out;
}

json stats_report(std::span<const StoreRecord> records, const std::vector<ReferenceShare>* reference) {
  std::vector<Trip> trips;
  std::vector<DiaryEvent> events;
  std::vector<TravelDiary> diaries;
  std::vector<Respondent> respondents;
  std::size_t person_days = 0;
  json qa_counts = json::object();
  for (const auto& r : records) {
    auto t = aggregate(r.diary);
    trips.insert(trips.end(), t.begin(), t.end());
    events.insert(events.end(), r.diary.events.begin(), r.diary.events.end());
    diaries.push_back(r.diary);
    respondents.push_back(r.respondent);
    person_days += r.diary.days.size();
    for (const auto& f : r.diary.qa_flags) {
      const std::string code(to_string(f.code));
      qa_counts[code] = qa_counts.value(code, 0) + 1;
    }
  }

  std::size_t single = 0;
  for (const auto& t : trips) single += t.category == TripCategory::SingleMode ? 1 : 0;

  json report;
  report["schema"] = "glh-stats/1";
  report["respondents"] = records.size();
  report["person_days"] = person_days;
  const EventCensus census = event_census(diaries);
  report["event_census"] = {{"activities", census.activities}, {"trip_legs", census.trip_legs}};
  report["trips"] = {{"total", trips.size()},
                     {"single_mode", single},
                     {"multimodal", trips.size() - single},
                     {"trip_rate_per_person_day",
                      person_days ? json(trip_rate_per_person_day(trips.size(), person_days))
                                  : json(nullptr)}};
  report["trip_distance_km"] = histogram_json(trip_distance_histogram(trips));

  const DurationStats dur = trip_duration_stats(trips);
  report["trip_duration_min"] = {{"histogram", histogram_json(dur.histogram)},
                                 {"mean", dur.mean_min},
                                 {"median", dur.median_min},
                                 {"count", dur.count}};

  const ModeShare ms = mode_share(trips);
  json shares = json::object();
  for (auto m : kAggregateModes) shares[std::string(to_string(m))] = ms.share[static_cast<std::size_t>(m)];
  report["mode_share"] = {{"shares", shares},
                          {"total", ms.total},
                          {"unlabeled", ms.unlabeled},
                          {"undefined", ms.undefined()}};

  const ActivityComposition ac = activity_composition(events);
  json comp = json::object();
  json durations = json::object();
  const auto hists = activity_duration_histograms(events);
  for (std::size_t i = 0; i < kOutOfHomeClasses.size(); ++i) {
    const std::string cls(to_string(kOutOfHomeClasses[i]));
    comp[cls] = {{"count", ac.counts[i]}, {"share", ac.share[i]}};
    durations[cls] = histogram_json(hists[i]);
  }
  report["activity_composition"] = {{"classes", comp},
                                    {"total", ac.total},
                                    {"home_excluded", ac.home_excluded},
                                    {"without_purpose", ac.without_purpose},
                                    {"empty_denominator", ac.empty_denominator()}};
  report["activity_duration_min"] = durations;

  const ConfusionMatrix cm = build_confusion(diaries);
  json precision_j = json::object();
  json recall_j = json::object();
  for (Mode m : kAllModes) {
    precision_j[std::string(to_string(m))] = opt_ratio(precision(cm, m));
    recall_j[std::string(to_string(m))] = opt_ratio(recall(cm, m));
  }
  report["mode_validation"] = {{"total", cm.total()},
                               {"trace", cm.trace()},
                               {"excluded", cm.excluded()},
                               {"mismatch_rate", cm.total() ? json(mismatch_rate(cm)) : json(nullptr)},
                               {"precision", precision_j},
                               {"recall", recall_j}};
  report["qa_flags"] = qa_counts;

  if (reference) {
    json tables = json::array();
    for (const auto& t : marginals_comparison(respondents, *reference)) {
      json rows = json::array();
      for (std::size_t i = 0; i < t.categories.size(); ++i) {
        rows.push_back({{"category", t.categories[i]},
                        {"sample_share", t.sample_share[i]},
                        {"reference_share", opt_ratio(t.reference_share[i])},
                        {"diff_pp", opt_ratio(t.diff_pp[i])}});
      }
      tables.push_back({{"attribute", t.attribute}, {"answered", t.answered}, {"rows", rows}});
    }
    report["marginals"] = tables;
  }
  return report;
}

namespace {

std::string pct_cell(const json& v) {
  return v.is_null() ? std::string("-") : fmt::format("{:.1f}%", v.get<double>() * 100.0);
}

void histogram_text(std::string& out, const std::string& title, const json& h, std::string_view unit) {
  out += fmt::format("{} (n={})\n", title, h["total"].get<std::uint64_t>());
  const auto& edges = h["bin_edges"];
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const std::string hi = edges[i + 1].is_null() ? std::string("inf") : fmt::format("{}", edges[i + 1].get<double>());
    out += fmt::format("  [{:>5}, {:>5}) {:<4} {:>8} {:>7}\n", edges[i].get<double>(), hi, unit,
                       h["counts"][i].get<std::uint64_t>(),
                       fmt::format("{:.1f}%", h["shares"][i].get<double>() * 100.0));
  }
}

}  // namespace

std::string stats_text(const json& report) {
  std::string out;
  out += fmt::format("Respondents: {}   Person-days: {}\n", report["respondents"].get<std::size_t>(),
                     report["person_days"].get<std::size_t>());
  out += fmt::format("Events: {} activities, {} trip legs\n",
                     report["event_census"]["activities"].get<std::size_t>(),
                     report["event_census"]["trip_legs"].get<std::size_t>());
  const auto& trips = report["trips"];
  out += fmt::format("Trips: {} ({} single-mode, {} multimodal)\n", trips["total"].get<std::size_t>(),
                     trips["single_mode"].get<std::size_t>(), trips["multimodal"].get<std::size_t>());
  out += fmt::format("Trip rate: {}\n\n",
                     trips["trip_rate_per_person_day"].is_null()
                         ? std::string("-")
                         : fmt::format("{:.2f} per person-day",
                                       trips["trip_rate_per_person_day"].get<double>()));
  histogram_text(out, "Trip distance", report["trip_distance_km"], "km");
  out += "\n";
  const auto& dur = report["trip_duration_min"];
  histogram_text(out, "Trip duration", dur["histogram"], "min");
  out += fmt::format("  mean {:.1f} min, median {:.1f} min\n\n", dur["mean"].get<double>(),
                     dur["median"].get<double>());
  out += "Mode share\n";
  for (const auto& [mode, share] : report["mode_share"]["shares"].items()) {
    out += fmt::format("  {:<12} {:>7}\n", mode, fmt::format("{:.1f}%", share.get<double>() * 100.0));
  }
  out += "\nOut-of-home activity composition\n";
  for (const auto& [cls, v] : report["activity_composition"]["classes"].items()) {
    out += fmt::format("  {:<16} {:>6} {:>7}\n", cls, v["count"].get<std::size_t>(),
                       fmt::format("{:.1f}%", v["share"].get<double>() * 100.0));
  }
  const auto& mv = report["mode_validation"];
  out += fmt::format("\nMode validation: {} labelled legs, {} excluded\n", mv["total"].get<std::uint64_t>(),
                     mv["excluded"].get<std::uint64_t>());
  out += fmt::format("  {:<16} {:>10} {:>8}\n", "mode", "precision", "recall");
  for (Mode m : kAllModes) {
    const std::string key(to_string(m));
    out += fmt::format("  {:<16} {:>10} {:>8}\n", display_name(m), pct_cell(mv["precision"][key]),
                       pct_cell(mv["recall"][key]));
  }
  if (report.contains("marginals")) {
    out += "\nSample vs reference\n";
    for (const auto& t : report["marginals"]) {
      out += fmt::format("  {}\n", t["attribute"].get<std::string>());
      for (const auto& row : t["rows"]) {
        out += fmt::format("    {:<16} {:>7} {:>7} {:>8}\n", row["category"].get<std::string>(),
                           pct_cell(row["sample_share"]), pct_cell(row["reference_share"]),
                           row["diff_pp"].is_null() ? std::string("-")
                                                    : fmt::format("{:+.1f} pp", row["diff_pp"].get<double>()));
      }
    }
  }
  return out;
}

std::string confusion_report_csv(std::span<const StoreRecord> records) {
  std::vector<TravelDiary> diaries;
  diaries.reserve(records.size());
  for (const auto& r : records) diaries.push_back(r.diary);
  return confusion_csv(build_confusion(diaries));
}

DesignBuild design_rows(std::span<const StoreRecord> records, std::span<const Zone> zones) {
  if (zones.empty()) throw Error(ErrorCode::EmptyZoneTable, "zone table is empty");
  DesignBuild b;
  for (const auto& r : records) {
    for (const auto& ev : r.diary.events) {
      if (!ev.is_leg()) continue;
      ++b.legs;
      const auto& leg = ev.leg();
      if (!leg.validated_mode || !leg.inferred_mode) {
        ++b.missing_label;
        continue;
      }
      if (!(ev.duration_s() > 0.0)) {
        ++b.zero_duration;
        continue;
      }
      b.rows.push_back(build_design(ev, r.respondent, lookup_density(leg.path.front(), zones)));
    }
  }
  return b;
}

json fit_json(const logit::Fit& fit, const DesignBuild* build) {
  json coefs = json::array();
  for (std::size_t j = 0; j < fit.names.size(); ++j) {
    const auto k = static_cast<Eigen::Index>(j);
    coefs.push_back({{"feature", fit.names[j]},
                     {"coefficient", fit.beta(k)},
                     {"se", fit.se(k)},
                     {"t", fit.t(k)}});
  }
  json j{{"schema", "glh-logit/1"},
         {"coefficients", std::move(coefs)},
         {"ll_full", fit.ll_full},
         {"ll_constant_only", fit.ll_constant_only},
         {"rho_square", fit.rho_square},
         {"iterations", fit.iterations},
         {"converged", fit.converged},
         {"gradient_max_norm", fit.gradient_max_norm},
         {"n_rows", fit.n},
         {"n_mismatch", fit.n_positive}};
  if (build) {
    j["legs"] = {{"total", build->legs},
                 {"used", build->rows.size()},
                 {"missing_label", build->missing_label},
                 {"zero_duration", build->zero_duration}};
  }
  return j;
}

std::string fit_text(const logit::Fit& fit) {
  std::string out = fmt::format("{:<22} {:>12} {:>12}\n", "", "coefficient", "t-statistics");
  for (std::size_t j = 0; j < fit.names.size(); ++j) {
    const auto k = static_cast<Eigen::Index>(j);
    out += fmt::format("{:<22} {:>12.2f} {:>12.2f}\n", fit.names[j], fit.beta(k), fit.t(k));
  }
  out += fmt::format("{:<35} {:>12.2f}\n", "Log-likelihood of the full model", fit.ll_full);
  out += fmt::format("{:<35} {:>12.2f}\n", "Log-likelihood, constant only", fit.ll_constant_only);
  out += fmt::format("{:<35} {:>12.2f}\n", "Rho-square vs constant only", fit.rho_square);
  out += fmt::format("{:<35} {:>12}\n", "Observations", fit.n);
  return out;
}

}  // namespace glh
