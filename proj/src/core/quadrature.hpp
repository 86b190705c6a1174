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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rpwf {

// Gauss rule on [0, 1] for the probability weight proportional to
// t^b (1 - t)^a, a, b > -1. Weights sum to 1.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_jacobi_unit(std::size_t points, double a, double b);

// Product rule for E_pi[f] under the Dirichlet density pi_gamma on T^{k-1}.
// Built by stick-breaking y_1 = t_1, y_i = t_i * prod_{l<i} (1 - t_l), which
// turns pi_gamma into independent Beta factors, one Gauss-Jacobi rule each.
// Exact for polynomials of degree <= 2 * points - 1.
class SimplexQuadrature {
 public:
  SimplexQuadrature(std::span<const double> gamma, std::size_t points_per_dim);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> node(std::size_t i) const {
    return {nodes_.data() + i * dim_, dim_};
  }
  double weight(std::size_t i) const { return weights_[i]; }

  template <class F>
  double integrate(F&& f) const {
    double total = 0.0;
    for (std::size_t i = 0; i < size(); ++i) total += weights_[i] * f(node(i));
    return total;
  }

 private:
  std::size_t dim_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace rpwf
