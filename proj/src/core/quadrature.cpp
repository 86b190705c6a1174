/*
   Copyright 2026 The rpwf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "core/quadrature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "core/error.hpp"

namespace rpwf {

GaussRule gauss_jacobi_unit(std::size_t points, double a, double b) {
  require(points >= 1, ErrorCode::kInvalidArgument, "need at least one node");
  require(a > -1.0 && b > -1.0, ErrorCode::kInvalidArgument,
          "Jacobi exponents must exceed -1");
  // Golub-Welsch on the monic Jacobi recurrence for (1-x)^a (1+x)^b on [-1,1].
  const auto n = static_cast<Eigen::Index>(points);
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(std::max<Eigen::Index>(n - 1, 0));
  const double ab = a + b;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double k = static_cast<double>(i);
    if (i == 0) {
      diag(i) = (b - a) / (ab + 2.0);
    } else {
      diag(i) = (b * b - a * a) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0));
    }
  }
  for (Eigen::Index i = 1; i < n; ++i) {
    const double k = static_cast<double>(i);
    double beta;
    if (i == 1) {
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double s = 2.0 * k + ab;
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    off(i - 1) = std::sqrt(beta);
  }
  GaussRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  if (n == 1) {
    rule.nodes[0] = 0.5 * (diag(0) + 1.0);
    rule.weights[0] = 1.0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  require(solver.info() == Eigen::Success, ErrorCode::kInternal,
          "Golub-Welsch eigen-decomposition failed");
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[i] = 0.5 * (solver.eigenvalues()(i) + 1.0);
    rule.weights[i] = v0 * v0;
  }
  return rule;
}

SimplexQuadrature::SimplexQuadrature(std::span<const double> gamma,
                                     std::size_t points_per_dim)
    : dim_(gamma.size() - 1) {
  require(gamma.size() >= 2, ErrorCode::kDimensionMismatch, "need k >= 2 weights");
  for (double g : gamma) {
    require(g > -1.0, ErrorCode::kInvalidArgument, "gamma entries must exceed -1");
  }
  // Factor j (0-based) is Beta(gamma_j + 1, sum_{l>j} (gamma_l + 1)).
  std::vector<GaussRule> rules;
  rules.reserve(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    double rest = 0.0;
    for (std::size_t l = j + 1; l < gamma.size(); ++l) rest += gamma[l] + 1.0;
    rules.push_back(gauss_jacobi_unit(points_per_dim, rest - 1.0, gamma[j]));
  }
  std::size_t total = 1;
  for (std::size_t j = 0; j < dim_; ++j) total *= points_per_dim;
  nodes_.resize(total * dim_);
  weights_.resize(total);
  std::vector<std::size_t> digit(dim_, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    double w = 1.0;
    double remaining = 1.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      const double t = rules[j].nodes[digit[j]];
      w *= rules[j].weights[digit[j]];
      nodes_[idx * dim_ + j] = remaining * t;
      remaining *= (1.0 - t);
    }
    weights_[idx] = w;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (++digit[j] < points_per_dim) break;
      digit[j] = 0;
    }
  }
}

}  // namespace rpwf
