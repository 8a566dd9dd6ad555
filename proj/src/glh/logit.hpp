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

#ifndef GLH_LOGIT_HPP
#define GLH_LOGIT_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "glh/design.hpp"

namespace glh::logit {

/// Dense design matrix (rows x features) and 0/1 outcomes.
struct Data {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<std::string> names;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(x.rows()); }
};

Data from_design(std::span<const DesignRow> rows);

/// 1 / (1 + exp(-z)), evaluated without overflow.
double logistic(double z) noexcept;
/// log(1 + exp(z)), evaluated without overflow.
double softplus(double z) noexcept;

/// Sum of y*ln(p) + (1-y)*ln(1-p), computed as y*eta - softplus(eta).
double log_likelihood(const Eigen::VectorXd& beta, const Data& data);
/// X^T (y - p)
Eigen::VectorXd gradient(const Eigen::VectorXd& beta, const Data& data);
/// -X^T diag(p(1-p)) X, exactly symmetric.
Eigen::MatrixXd hessian(const Eigen::VectorXd& beta, const Data& data);

struct Options {
  int max_iterations = 100;
  double gradient_tolerance = 1e-8;
  double step_tolerance = 1e-10;
  /// Any |beta_j| beyond this is treated as a diverging coefficient.
  double separation_bound = 50.0;
  int max_step_halvings = 40;
};

struct Fit {
  std::vector<std::string> names;
  Eigen::VectorXd beta;
  Eigen::VectorXd se;
  Eigen::VectorXd t;
  double ll_full = 0.0;
  double ll_constant_only = 0.0;
  double rho_square = 0.0;
  int iterations = 0;
  bool converged = false;
  double gradient_max_norm = 0.0;
  /// Log-likelihood of every accepted iterate, starting at beta = 0.
  std::vector<double> ll_trace;
  std::size_t n = 0;
  std::size_t n_positive = 0;
};

/// Newton-Raphson from beta = 0 with step halving.
///
/// Throws DegenerateOutcome (an outcome class is absent), RankDeficient
/// (detail lists the dependent columns), Separation (a coefficient exceeds
/// the separation bound) or NoConvergence.
Fit fit(const Data& data, const Options& options = {});

/// Closed form n1*ln(p) + n0*ln(1-p) with p = n1/n.
double constant_only_log_likelihood(std::size_t n_positive, std::size_t n);

/// 1 - ll_full/ll_constant. Throws InvalidLikelihoods unless
/// ll_constant < 0 and ll_full >= ll_constant.
double rho_square(double ll_full, double ll_constant);

}  // namespace glh::logit

#endif  // GLH_LOGIT_HPP
