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

#include <doctest.h>

#include <cmath>
#include <random>

#include "glh/design.hpp"
#include "glh/error.hpp"
#include "glh/logit.hpp"
#include "test_support.hpp"

using namespace glh;
using glh::test::leg;

namespace {

logit::Data data_from(const glh::test::Simulated& sim) {
  logit::Data d;
  const auto n = static_cast<Eigen::Index>(sim.x.size());
  d.x.resize(n, 11);
  d.y.resize(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index j = 0; j < 11; ++j) d.x(r, j) = sim.x[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
    d.y(r) = sim.y[static_cast<std::size_t>(r)];
  }
  for (std::size_t j = 0; j < kFeatureCount; ++j) d.names.emplace_back(to_string(static_cast<Feature>(j)));
  return d;
}

logit::Data random_logit_data(std::mt19937_64& rng, Eigen::Index n, Eigen::Index k) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::bernoulli_distribution b(0.4);
  logit::Data d;
  d.x.resize(n, k);
  d.y.resize(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    d.x(r, 0) = 1.0;
    for (Eigen::Index j = 1; j < k; ++j) d.x(r, j) = g(rng);
    d.y(r) = b(rng) ? 1.0 : 0.0;
  }
  for (Eigen::Index j = 0; j < k; ++j) d.names.push_back("x" + std::to_string(j));
  return d;
}

// Direct per-row evaluation of the Bernoulli log-likelihood.
double naive_ll(const Eigen::VectorXd& beta, const logit::Data& d) {
  double s = 0.0;
  for (Eigen::Index r = 0; r < d.x.rows(); ++r) {
    const double eta = d.x.row(r).dot(beta);
    const double p = 1.0 / (1.0 + std::exp(-eta));
    s += d.y(r) > 0.5 ? std::log(p) : std::log(1.0 - p);
  }
  return s;
}

}  // namespace

TEST_CASE("build_design: worked example") {
  // Validated automobile, 6 km in 2 h (3 km/h), density 10, age 25, full-time.
  auto ev = leg("2023-07-02T10:00:00Z", "2023-07-02T12:00:00Z", Mode::Automobile, Mode::Walk, 6000);
  auto r = glh::test::sample_respondent();
  r.age = 25;
  r.employment = Employment::FullTime;
  const DesignRow row = build_design(ev, r, {10.0});
  CHECK(row.mismatch);
  const std::array<double, 11> expected = {1, 1, 0, 0, 0, 1, 0, 1, std::log(10.0), 1, 1};
  for (std::size_t j = 0; j < 11; ++j) {
    CAPTURE(j);
    CHECK(row.x[j] == doctest::Approx(expected[j]).epsilon(1e-15));
  }
  double eta = 0.0;
  for (std::size_t j = 0; j < 11; ++j) eta += glh::test::kPublishedBeta[j] * row.x[j];
  CHECK(eta == doctest::Approx(-2.2015863851209524).epsilon(1e-12));
  CHECK(logit::logistic(eta) == doctest::Approx(0.09960812163990899).epsilon(1e-12));
}

TEST_CASE("build_design: dummies and boundaries") {
  const auto r = glh::test::sample_respondent();
  auto taxi = leg("2023-07-02T10:00:00Z", "2023-07-02T10:30:00Z", Mode::TaxiRidehail, Mode::Automobile, 10000);
  const DesignRow t = build_design(taxi, r, {5.0});
  for (auto f : {Feature::Automobile, Feature::LocalTransit, Feature::RegionalTransit, Feature::CycleWalk}) {
    CHECK(t[f] == 0.0);
  }
  // 10 km in 30 min = exactly 20 km/h: reference speed band.
  CHECK(t[Feature::SpeedBelow5] == 0.0);
  CHECK(t[Feature::Speed5To20] == 0.0);
  CHECK(t[Feature::DistanceAtLeast5Km] == 1.0);

  auto walk = leg("2023-07-02T10:00:00Z", "2023-07-02T10:30:00Z", Mode::Walk, Mode::Walk, 4999);
  const DesignRow w = build_design(walk, r, {5.0});
  CHECK(w[Feature::CycleWalk] == 1.0);
  CHECK_FALSE(w.mismatch);
  CHECK(w[Feature::Speed5To20] == 1.0);
  CHECK(w[Feature::DistanceAtLeast5Km] == 0.0);

  auto unlabeled = leg("2023-07-02T10:00:00Z", "2023-07-02T10:30:00Z", std::nullopt, Mode::Walk);
  CHECK_THROWS_AS(build_design(unlabeled, r, {5.0}), Error);
  auto instant = leg("2023-07-02T10:00:00Z", "2023-07-02T10:00:00Z", Mode::Walk, Mode::Walk);
  CHECK_THROWS_AS(build_design(instant, r, {5.0}), Error);
  CHECK_THROWS_AS(build_design(walk, r, {0.0}), Error);
}

TEST_CASE("lookup_density") {
  const std::vector<Zone> single = {{7, {43.7, -79.4}, 3.0}};
  CHECK(lookup_density({10.0, 10.0}, single).population_density_kppl_km2 == 3.0);
  // Equidistant on the equator: lower id wins regardless of order.
  const std::vector<Zone> tie = {{9, {0.0, 1.0}, 9.0}, {4, {0.0, -1.0}, 4.0}};
  CHECK(lookup_density({0.0, 0.0}, tie).population_density_kppl_km2 == 4.0);
  CHECK_THROWS_AS(lookup_density({0, 0}, std::vector<Zone>{}), Error);

  // Brute-force scan oracle.
  const std::vector<Zone> three = {{1, {43.65, -79.38}, 8.0}, {2, {43.80, -79.30}, 2.5}, {3, {43.60, -79.60}, 1.2}};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lat(43.5, 43.9), lon(-79.7, -79.2);
  for (int i = 0; i < 200; ++i) {
    const GeoPoint p{lat(rng), lon(rng)};
    std::size_t best = 0;
    for (std::size_t z = 1; z < three.size(); ++z) {
      const double dz = haversine_m(p, three[z].centroid), db = haversine_m(p, three[best].centroid);
      if (dz < db || (dz == db && three[z].id < three[best].id)) best = z;
    }
    CHECK(lookup_density(p, three).population_density_kppl_km2 == three[best].density_kppl_km2);
  }
}

TEST_CASE("log_likelihood") {
  std::mt19937_64 rng(3);
  auto d = random_logit_data(rng, 50, 4);
  CHECK(logit::log_likelihood(Eigen::VectorXd::Zero(4), d) == doctest::Approx(-50 * std::log(2.0)).epsilon(1e-14));
  std::normal_distribution<double> g(0.0, 0.7);
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd beta(4);
    for (int j = 0; j < 4; ++j) beta(j) = g(rng);
    const double naive = naive_ll(beta, d);
    CHECK(std::fabs(logit::log_likelihood(beta, d) - naive) <= 1e-12 * std::fabs(naive));
  }
  // Saturation: y = 1, eta growing, LL rises monotonically towards 0.
  logit::Data one;
  one.x = Eigen::MatrixXd::Ones(1, 1);
  one.y = Eigen::VectorXd::Ones(1);
  double prev = -INFINITY;
  for (double b : {0.0, 1.0, 5.0, 20.0, 100.0, 800.0}) {
    Eigen::VectorXd beta(1);
    beta << b;
    const double ll = logit::log_likelihood(beta, one);
    CHECK(ll <= 0.0);
    CHECK(ll >= prev);
    CHECK(std::isfinite(ll));
    prev = ll;
  }
  Eigen::VectorXd far(1);
  far << -800.0;
  CHECK(logit::log_likelihood(far, one) == doctest::Approx(-800.0));
}

TEST_CASE("gradient and hessian") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 0.5);
  for (int k = 0; k < 20; ++k) {
    auto d = random_logit_data(rng, 80, 5);
    Eigen::VectorXd beta(5);
    for (int j = 0; j < 5; ++j) beta(j) = g(rng);
    const Eigen::VectorXd grad = logit::gradient(beta, d);
    const double h = 1e-5;
    for (int j = 0; j < 5; ++j) {
      Eigen::VectorXd bp = beta, bm = beta;
      bp(j) += h;
      bm(j) -= h;
      const double fd = (logit::log_likelihood(bp, d) - logit::log_likelihood(bm, d)) / (2 * h);
      CHECK(std::fabs(fd - grad(j)) <= 1e-6 * std::max(1.0, std::fabs(grad(j))));
    }
    const Eigen::MatrixXd H = logit::hessian(beta, d);
    CHECK(H == H.transpose());
    CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(H).eigenvalues().maxCoeff() <= 1e-9);
  }
  // y equal to p everywhere: zero gradient.
  logit::Data d;
  d.x = Eigen::MatrixXd::Ones(4, 1);
  d.y = Eigen::VectorXd::Constant(4, 0.5);
  CHECK(logit::gradient(Eigen::VectorXd::Zero(1), d).norm() == 0.0);
}

TEST_CASE("fit: null model") {
  std::mt19937_64 rng(17);
  logit::Data d = random_logit_data(rng, 4000, 3);
  std::bernoulli_distribution b(0.5);
  for (Eigen::Index r = 0; r < d.y.size(); ++r) d.y(r) = b(rng) ? 1.0 : 0.0;
  const auto f = logit::fit(d);
  CHECK(f.converged);
  for (Eigen::Index j = 1; j < 3; ++j) CHECK(std::fabs(f.beta(j)) < 3 * f.se(j));
  CHECK(std::fabs(f.beta(0)) < 3 * f.se(0));
  for (std::size_t i = 1; i < f.ll_trace.size(); ++i) CHECK(f.ll_trace[i] >= f.ll_trace[i - 1]);
}

TEST_CASE("fit: recovers the published coefficients from simulated rows") {
  const auto sim = glh::test::simulate_mismatch_rows(6000, 20230702);
  const auto f = logit::fit(data_from(sim));
  CHECK(f.converged);
  for (std::size_t j = 0; j < 11; ++j) {
    CAPTURE(j);
    const auto k = static_cast<Eigen::Index>(j);
    CHECK(std::fabs(f.beta(k) - glh::test::kPublishedBeta[j]) < 3 * f.se(k));
    CHECK(f.t(k) == doctest::Approx(f.beta(k) / f.se(k)));
  }
  CHECK(f.rho_square > 0.0);
  CHECK(f.rho_square < 1.0);
}

TEST_CASE("fit: failure modes") {
  std::mt19937_64 rng(23);
  auto d = random_logit_data(rng, 100, 3);
  auto all_zero = d;
  all_zero.y.setZero();
  try {
    logit::fit(all_zero);
    FAIL("expected DegenerateOutcome");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateOutcome);
  }
  auto dup = d;
  dup.x.col(2) = dup.x.col(1) * 2.0;
  try {
    logit::fit(dup);
    FAIL("expected RankDeficient");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankDeficient);
  }
  auto sep = d;
  for (Eigen::Index r = 0; r < sep.y.size(); ++r) sep.y(r) = sep.x(r, 1) > 0 ? 1.0 : 0.0;
  try {
    logit::fit(sep);
    FAIL("expected Separation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Separation);
  }
}

TEST_CASE("constant-only log-likelihood and rho-square") {
  const double ll = logit::constant_only_log_likelihood(312, 5706);
  CHECK(ll == doctest::Approx(-1210.0665127466720).epsilon(1e-13));
  CHECK(std::fabs(ll - -1209.84) < 1.5);

  // The closed form equals the maximised one-column fit.
  logit::Data d;
  d.x = Eigen::MatrixXd::Ones(5706, 1);
  d.y = Eigen::VectorXd::Zero(5706);
  d.y.head(312).setOnes();
  d.names = {"constant"};
  const auto f = logit::fit(d);
  CHECK(std::fabs(f.ll_full - ll) < 1e-6);
  CHECK(f.beta(0) == doctest::Approx(std::log(312.0 / 5394.0)));

  CHECK(logit::rho_square(-689.09, -1209.84) == doctest::Approx(0.4304288170336573).epsilon(1e-13));
  CHECK(logit::rho_square(-5.0, -5.0) == 0.0);
  CHECK(logit::rho_square(-1e-12, -5.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(logit::rho_square(-6.0, -5.0), Error);
  CHECK_THROWS_AS(logit::rho_square(-1.0, 0.0), Error);
}
