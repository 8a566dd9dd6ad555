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

#include "glh/logit.hpp"

#include <cmath>

#include "glh/error.hpp"

namespace glh::logit {

Data from_design(std::span<const DesignRow> rows) {
  Data d;
  d.x.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(kFeatureCount));
  d.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      d.x(r, static_cast<Eigen::Index>(j)) = rows[i].x[j];
    }
    d.y(r) = rows[i].mismatch ? 1.0 : 0.0;
  }
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    d.names.emplace_back(to_string(static_cast<Feature>(j)));
  }
  return d;
}

double logistic(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double softplus(double z) noexcept {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double log_likelihood(const Eigen::VectorXd& beta, const Data& data) {
  double ll = 0.0;
  for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
    const double eta = data.x.row(i).dot(beta);
    ll += data.y(i) * eta - softplus(eta);
  }
  return ll;
}

Eigen::VectorXd gradient(const Eigen::VectorXd& beta, const Data& data) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(beta.size());
  for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
    const double p = logistic(data.x.row(i).dot(beta));
    g += (data.y(i) - p) * data.x.row(i).transpose();
  }
  return g;
}

Eigen::MatrixXd hessian(const Eigen::VectorXd& beta, const Data& data) {
  const Eigen::Index k = beta.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
    const double p = logistic(data.x.row(i).dot(beta));
    const double w = p * (1.0 - p);
    for (Eigen::Index a = 0; a < k; ++a) {
      const double wa = w * data.x(i, a);
      if (wa == 0.0) continue;
      for (Eigen::Index b = a; b < k; ++b) h(a, b) -= wa * data.x(i, b);
    }
  }
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < a; ++b) h(a, b) = h(b, a);
  }
  return h;
}

double constant_only_log_likelihood(std::size_t n_positive, std::size_t n) {
  if (n == 0 || n_positive == 0 || n_positive == n) {
    throw Error(ErrorCode::DegenerateOutcome, "constant-only model needs both outcome classes",
                {{"n", n}, {"n_positive", n_positive}});
  }
  const double n1 = static_cast<double>(n_positive);
  const double n0 = static_cast<double>(n - n_positive);
  const double p = n1 / static_cast<double>(n);
  return n1 * std::log(p) + n0 * std::log1p(-p);
}

double rho_square(double ll_full, double ll_constant) {
  if (!(ll_constant < 0.0) || !(ll_full >= ll_constant)) {
    throw Error(ErrorCode::InvalidLikelihoods,
                "need ll_constant < 0 and ll_full >= ll_constant",
                {{"ll_full", ll_full}, {"ll_constant", ll_constant}});
  }
  return 1.0 - ll_full / ll_constant;
}

namespace {

void check_rank(const Data& data) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(data.x);
  const auto rank = qr.rank();
  if (rank == data.x.cols()) return;
  nlohmann::json dependent = nlohmann::json::array();
  const auto& perm = qr.colsPermutation().indices();
  for (Eigen::Index j = rank; j < data.x.cols(); ++j) {
    const auto col = static_cast<std::size_t>(perm(j));
    dependent.push_back(col < data.names.size() ? data.names[col] : std::to_string(col));
  }
  throw Error(ErrorCode::RankDeficient,
              "design matrix has rank " + std::to_string(rank) + " < " +
                  std::to_string(data.x.cols()) + " columns",
              {{"dependent_columns", dependent}});
}

void check_separation(const Eigen::VectorXd& beta, const Data& data, double bound) {
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (!(std::fabs(beta(j)) <= bound)) {
      const auto col = static_cast<std::size_t>(j);
      throw Error(ErrorCode::Separation,
                  "coefficient diverges (|beta| > " + std::to_string(bound) + ")",
                  {{"feature", col < data.names.size() ? data.names[col] : std::to_string(col)},
                   {"value", beta(j)}});
    }
  }
}

}  // namespace

Fit fit(const Data& data, const Options& options) {
  const std::size_t n = data.rows();
  std::size_t n_positive = 0;
  for (Eigen::Index i = 0; i < data.y.size(); ++i) n_positive += data.y(i) > 0.5 ? 1 : 0;
  if (n_positive == 0 || n_positive == n) {
    throw Error(ErrorCode::DegenerateOutcome, "estimation needs at least one row of each outcome",
                {{"n", n}, {"n_positive", n_positive}});
  }
  check_rank(data);

  Fit out;
  out.names = data.names;
  out.n = n;
  out.n_positive = n_positive;

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(data.x.cols());
  double ll = log_likelihood(beta, data);
  out.ll_trace.push_back(ll);

  Eigen::MatrixXd h;
  for (int iter = 0;; ++iter) {
    const Eigen::VectorXd g = gradient(beta, data);
    h = hessian(beta, data);
    out.gradient_max_norm = g.lpNorm<Eigen::Infinity>();
    if (out.gradient_max_norm < options.gradient_tolerance) {
      out.converged = true;
      break;
    }
    if (iter >= options.max_iterations) break;

    const Eigen::LDLT<Eigen::MatrixXd> ldlt(-h);
    if (ldlt.info() != Eigen::Success) {
      throw Error(ErrorCode::RankDeficient, "information matrix is singular");
    }
    const Eigen::VectorXd step = ldlt.solve(g);

    double scale = 1.0;
    Eigen::VectorXd candidate = beta + step;
    double ll_candidate = log_likelihood(candidate, data);
    int halvings = 0;
    while (!(ll_candidate >= ll) && halvings < options.max_step_halvings) {
      scale *= 0.5;
      candidate = beta + scale * step;
      ll_candidate = log_likelihood(candidate, data);
      ++halvings;
    }
    if (!(ll_candidate >= ll)) {
      // No ascent left along the Newton direction: numerically at the top.
      out.converged = out.gradient_max_norm < 1e-6;
      break;
    }
    beta = candidate;
    ll = ll_candidate;
    out.ll_trace.push_back(ll);
    out.iterations = iter + 1;
    check_separation(beta, data, options.separation_bound);

    if ((scale * step).lpNorm<Eigen::Infinity>() < options.step_tolerance) {
      out.gradient_max_norm = gradient(beta, data).lpNorm<Eigen::Infinity>();
      h = hessian(beta, data);
      out.converged = true;
      break;
    }
  }
  if (!out.converged) {
    throw Error(ErrorCode::NoConvergence,
                "Newton-Raphson did not converge in " + std::to_string(options.max_iterations) +
                    " iterations",
                {{"gradient_max_norm", out.gradient_max_norm}});
  }

  out.beta = beta;
  out.ll_full = ll;
  const Eigen::LDLT<Eigen::MatrixXd> info(-h);
  const Eigen::MatrixXd cov =
      info.solve(Eigen::MatrixXd::Identity(beta.size(), beta.size()));
  out.se = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  out.t = out.beta.cwiseQuotient(out.se);
  out.ll_constant_only = constant_only_log_likelihood(n_positive, n);
  out.rho_square = rho_square(out.ll_full, out.ll_constant_only);
  return out;
}

}  // namespace glh::logit
