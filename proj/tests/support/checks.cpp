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

#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "glh/confusion.hpp"
#include "glh/error.hpp"
#include "glh/geo.hpp"
#include "glh/logit.hpp"
#include "glh/metrics.hpp"
#include "glh/store.hpp"
#include "glh/trips.hpp"
#include "test_support.hpp"

namespace glh::test {

namespace {

CheckResult failed(std::size_t cases, std::string why) { return {false, cases, std::move(why)}; }

logit::Data to_data(const Simulated& sim) {
  logit::Data d;
  const auto n = static_cast<Eigen::Index>(sim.x.size());
  d.x.resize(n, 11);
  d.y.resize(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index j = 0; j < 11; ++j) d.x(r, j) = sim.x[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
    d.y(r) = sim.y[static_cast<std::size_t>(r)];
  }
  for (std::size_t j = 0; j < 11; ++j) d.names.push_back("b" + std::to_string(j));
  return d;
}

}  // namespace

CheckResult check_validation_margins() {
  const ConfusionMatrix m = build_confusion(published_validation_legs());
  CheckResult res;
  double worst_exact = 0.0, worst_published = 0.0;
  for (std::size_t k = 0; k < 7; ++k) {
    // Ratios recomputed from the raw cell counts.
    std::uint64_t col = 0, row = 0;
    for (std::size_t j = 0; j < 7; ++j) {
      col += kValidationCounts[j][k];
      row += kValidationCounts[k][j];
    }
    const double exact_p = 100.0 * static_cast<double>(kValidationCounts[k][k]) / static_cast<double>(col);
    const double exact_r = 100.0 * static_cast<double>(kValidationCounts[k][k]) / static_cast<double>(row);
    const auto p = precision(m, kAllModes[k]);
    const auto r = recall(m, kAllModes[k]);
    res.cases += 2;
    if (!p || !r) return failed(res.cases, fmt::format("undefined ratio for {}", to_string(kAllModes[k])));
    worst_exact = std::max({worst_exact, std::fabs(100 * *p - exact_p), std::fabs(100 * *r - exact_r)});
    worst_published = std::max({worst_published, std::fabs(100 * *p - kPublishedPrecisionPct[k]),
                            std::fabs(100 * *r - kPublishedRecallPct[k])});
  }
  res.ok = worst_exact <= 0.05 && worst_published <= 0.1 && m.total() == 5706 && m.trace() == 5394;
  res.detail = fmt::format("max |impl-exact| {:.2e} pp, max |impl-published| {:.3f} pp, total {}, trace {}",
                           worst_exact, worst_published, m.total(), m.trace());
  return res;
}

CheckResult check_constant_only_ll() {
  const std::uint64_t n = 5706, trace = 5394, n1 = n - trace;
  const double p = static_cast<double>(n1) / static_cast<double>(n);
  const double oracle = static_cast<double>(n1) * std::log(p) + static_cast<double>(trace) * std::log1p(-p);
  const double impl = logit::constant_only_log_likelihood(n1, n);
  // The same quantity from a maximised intercept-only fit.
  logit::Data d;
  d.x = Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(n), 1);
  d.y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  d.y.head(static_cast<Eigen::Index>(n1)).setOnes();
  d.names = {"constant"};
  const auto fit = logit::fit(d);
  CheckResult res;
  res.cases = 3;
  res.ok = std::fabs(impl - oracle) < 1e-6 && std::fabs(fit.ll_full - oracle) < 1e-6 &&
           std::fabs(impl - -1209.84) < 1.5;
  res.detail = fmt::format("closed form {:.6f}, fitted {:.6f}, published -1209.84 (diff {:.3f})", impl,
                           fit.ll_full, impl + 1209.84);
  return res;
}

CheckResult check_rho_square() {
  const double rho = logit::rho_square(-689.09, -1209.84);
  CheckResult res;
  res.cases = 1;
  res.ok = std::fabs(rho - 0.4304) <= 0.0005 && std::round(rho * 100) / 100 == 0.43;
  res.detail = fmt::format("rho-square {:.6f} -> {:.2f}", rho, rho);
  return res;
}

CheckResult check_logit_recovery(std::uint64_t seed) {
  CheckResult res;
  const auto data = to_data(simulate_mismatch_rows(6000, seed));
  const auto fit = logit::fit(data);
  res.cases = 11;
  if (!fit.converged) return failed(res.cases, "fit did not converge");
  double worst_z = 0.0;
  for (std::size_t j = 0; j < 11; ++j) {
    const auto k = static_cast<Eigen::Index>(j);
    worst_z = std::max(worst_z, std::fabs(fit.beta(k) - kPublishedBeta[j]) / fit.se(k));
  }
  for (std::size_t i = 1; i < fit.ll_trace.size(); ++i) {
    if (fit.ll_trace[i] < fit.ll_trace[i - 1]) {
      return failed(res.cases, fmt::format("log-likelihood fell at iteration {}", i));
    }
  }
  // Finite differences on random (beta, data) draws.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> g(0.0, 0.6);
  std::bernoulli_distribution b(0.35);
  double worst_rel = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const Eigen::Index n = 200, kf = 6;
    logit::Data d;
    d.x.resize(n, kf);
    d.y.resize(n);
    for (Eigen::Index r = 0; r < n; ++r) {
      d.x(r, 0) = 1.0;
      for (Eigen::Index j = 1; j < kf; ++j) d.x(r, j) = g(rng);
      d.y(r) = b(rng) ? 1.0 : 0.0;
    }
    Eigen::VectorXd beta(kf);
    for (Eigen::Index j = 0; j < kf; ++j) beta(j) = g(rng);
    const Eigen::VectorXd analytic = logit::gradient(beta, d);
    Eigen::VectorXd numeric(kf);
    const double h = 1e-5;
    for (Eigen::Index j = 0; j < kf; ++j) {
      Eigen::VectorXd bp = beta, bm = beta;
      bp(j) += h;
      bm(j) -= h;
      numeric(j) = (logit::log_likelihood(bp, d) - logit::log_likelihood(bm, d)) / (2 * h);
    }
    worst_rel = std::max(worst_rel, (numeric - analytic).norm() / analytic.norm());
    ++res.cases;
  }
  res.ok = worst_z < 3.0 && worst_rel < 1e-6;
  res.detail = fmt::format("max |beta-truth|/se {:.2f} over 11 coefficients, {} Newton iterations, "
                           "max gradient rel. error {:.1e}",
                           worst_z, fit.iterations, worst_rel);
  return res;
}

CheckResult check_trip_oracle() {
  const std::array<std::optional<Mode>, 4> alphabet = {std::nullopt, Mode::Walk, Mode::Automobile,
                                                       Mode::LocalTransit};
  CheckResult res;
  for (int len = 1; len <= 6; ++len) {
    int total = 1;
    for (int i = 0; i < len; ++i) total *= 4;
    for (int code = 0; code < total; ++code) {
      std::vector<OracleEvent> sequence;
      TravelDiary diary;
      int c = code;
      for (int pos = 0; pos < len; ++pos, c /= 4) {
        const auto sym = static_cast<std::size_t>(c % 4);
        // Repeating distances make ties between legs of different modes.
        const double dist = 500.0 * (1 + pos % 3);
        const auto begin = format_timestamp(at("2023-07-02T08:00:00Z") + std::chrono::minutes(10 * pos));
        const auto end = format_timestamp(at("2023-07-02T08:00:00Z") + std::chrono::minutes(10 * pos + 10));
        if (sym == 0) {
          sequence.push_back({true, std::nullopt, 0.0});
          diary.events.push_back(activity(begin, end));
        } else {
          sequence.push_back({false, alphabet[sym], dist});
          diary.events.push_back(leg(begin, end, alphabet[sym], alphabet[sym], dist));
        }
      }
      ++res.cases;
      const auto want = oracle_trips(sequence);
      const auto got = aggregate(diary);
      bool same = want.size() == got.size();
      for (std::size_t t = 0; same && t < want.size(); ++t) {
        same = want[t].legs == got[t].leg_indices &&
               want[t].multimodal == (got[t].category == TripCategory::Multimodal) &&
               want[t].main_mode == got[t].main_mode && want[t].access_mode == got[t].access_mode &&
               want[t].egress_mode == got[t].egress_mode;
      }
      if (!same) return failed(res.cases, fmt::format("mismatch for sequence length {} code {}", len, code));
    }
  }
  res.detail = fmt::format("{} sequences agree", res.cases);
  return res;
}

CheckResult check_trip_rate() {
  const double rate = trip_rate(5498, 290, 7);
  CheckResult res;
  res.cases = 1;
  res.ok = fmt::format("{:.2f}", rate) == "2.71" && std::fabs(rate - 5498.0 / 2030.0) < 1e-15;
  res.detail = fmt::format("{:.6f} -> {:.2f}", rate, rate);
  return res;
}

CheckResult prop_histogram_conservation(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(0, 300);
  std::exponential_distribution<double> value(0.2);
  std::uniform_int_distribution<int> which(0, 2);
  CheckResult res;
  for (std::size_t c = 0; c < cases; ++c, ++res.cases) {
    const auto& edges = which(rng) == 0 ? kTripDistanceEdgesKm
                        : which(rng) == 1 ? kTripDurationEdgesMin
                                          : kActivityDurationEdgesMin;
    std::vector<double> values(static_cast<std::size_t>(count(rng)));
    for (auto& v : values) {
      v = value(rng);
      // Land some values exactly on edges.
      if (which(rng) == 0) v = edges[static_cast<std::size_t>(which(rng)) % (edges.size() - 1)];
    }
    const Histogram h = make_histogram(edges, values);
    if (h.total() != values.size()) {
      return failed(res.cases, fmt::format("case {}: {} values but {} counted", c, values.size(), h.total()));
    }
    double share_sum = 0.0;
    for (double s : h.shares()) share_sum += s;
    if (!values.empty() && std::fabs(share_sum - 1.0) > 1e-12) return failed(res.cases, "shares do not sum to 1");
  }
  res.detail = fmt::format("{} cases", res.cases);
  return res;
}

CheckResult prop_mode_share_normalised(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(0, 400), mode(0, 7);
  CheckResult res;
  double worst = 0.0;
  for (std::size_t c = 0; c < cases; ++c, ++res.cases) {
    std::vector<Trip> trips(static_cast<std::size_t>(count(rng)));
    std::size_t labelled = 0;
    for (auto& t : trips) {
      const int m = mode(rng);
      if (m < 7) {
        t.main_mode = kAllModes[static_cast<std::size_t>(m)];
        ++labelled;
      }
    }
    const ModeShare s = mode_share(trips);
    if (s.total != labelled || s.unlabeled != trips.size() - labelled) return failed(res.cases, "tallies off");
    double sum = 0.0;
    for (double v : s.share) sum += v;
    if (s.total == 0) {
      if (sum != 0.0 || !s.undefined()) return failed(res.cases, "empty share not all-zero");
      continue;
    }
    worst = std::max(worst, std::fabs(sum - 1.0));
    if (std::fabs(sum - 1.0) > 1e-12) return failed(res.cases, fmt::format("sum {:.17g}", sum));
  }
  res.detail = fmt::format("{} cases, max |sum-1| {:.1e}", res.cases, worst);
  return res;
}

CheckResult prop_haversine_symmetry_identity(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lat(-90, 90), lon(-180, 180);
  const double half_circumference = std::numbers::pi * 6371000.0;
  CheckResult res;
  for (std::size_t c = 0; c < cases; ++c, ++res.cases) {
    const GeoPoint a{lat(rng), lon(rng)}, b{lat(rng), lon(rng)};
    const double ab = haversine_m(a, b), ba = haversine_m(b, a);
    if (ab != ba) return failed(res.cases, fmt::format("asymmetric: {} vs {}", ab, ba));
    if (haversine_m(a, a) != 0.0) return failed(res.cases, "d(a,a) != 0");
    if (!(ab >= 0.0) || ab > half_circumference + 1e-6) return failed(res.cases, "out of range");
  }
  res.detail = fmt::format("{} point pairs", res.cases);
  return res;
}

CheckResult prop_persistence_round_trip(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(0, 3);
  CheckResult res;
  TempDir scratch;
  for (std::size_t c = 0; c < cases; ++c, ++res.cases) {
    std::vector<StoreRecord> records;
    const int n = size(rng);
    for (int i = 0; i < n; ++i) records.push_back(random_record(rng, fmt::format("g{:03}", i)));
    const auto root = scratch / fmt::format("store{}", c);
    persist(root, records);
    if (load(root) != records) return failed(res.cases, fmt::format("case {} differs after reload", c));
  }
  res.detail = fmt::format("{} generated stores", res.cases);
  return res;
}

CheckResult prop_confusion_order_invariance(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(0, 500), mode(0, 7);
  CheckResult res;
  for (std::size_t c = 0; c < cases; ++c, ++res.cases) {
    std::vector<LegDetails> legs(static_cast<std::size_t>(count(rng)));
    for (auto& l : legs) {
      const int v = mode(rng), i = mode(rng);
      if (v < 7) l.validated_mode = kAllModes[static_cast<std::size_t>(v)];
      if (i < 7) l.inferred_mode = kAllModes[static_cast<std::size_t>(i)];
    }
    const ConfusionMatrix before = build_confusion(legs);
    std::shuffle(legs.begin(), legs.end(), rng);
    const ConfusionMatrix after = build_confusion(legs);
    if (!(before == after)) return failed(res.cases, fmt::format("case {} changed under permutation", c));
    if (before.total() + before.excluded() != legs.size()) return failed(res.cases, "legs lost");
  }
  res.detail = fmt::format("{} shuffled leg sets", res.cases);
  return res;
}

}  // namespace glh::test
