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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "core/polynomial.hpp"
#include "core/quadrature.hpp"
#include "core/simplex.hpp"
#include "core/wf_sde.hpp"

namespace rpwf {

// Dirichlet exponents gamma_i > -1 on T^{k-1}. Kept both as exact rationals
// (every double is one) and as doubles.
struct GammaWeights {
  std::vector<Rational> exact;
  std::vector<double> value;

  static GammaWeights from_values(std::span<const double> gamma);
  static GammaWeights from_rationals(std::vector<Rational> gamma);
  // gamma_i = 2 (b/alpha) p_i - 1, evaluated exactly from the double inputs.
  static GammaWeights from_wf(const WfParams& params);

  std::size_t k() const { return value.size(); }
  std::size_t dim() const { return value.size() - 1; }
  Rational sum_exact() const;
  double sum() const;
};

// Throws kNotOnSimplex unless y_i >= 0 and sum y <= 1 (within 1e-12).
void validate_tpoint(std::span<const double> y, std::size_t dim);

// log w_gamma = log Gamma(sum gamma + k) - sum log Gamma(gamma_i + 1).
double log_dirichlet_normalizer(const GammaWeights& gw);

// pi_gamma(y). On the boundary a negative exponent gives +infinity.
double dirichlet_density(const GammaWeights& gw, std::span<const double> y);
double dirichlet_log_density(const GammaWeights& gw, std::span<const double> y);

// E_pi[y^e], exact.
Rational dirichlet_moment(const GammaWeights& gw, const Exponent& e);

Rational inner_product(const Polynomial<Rational>& f, const Polynomial<Rational>& g,
                       const GammaWeights& gw);
double inner_product(const Polynomial<double>& f, const Polynomial<double>& g,
                     const SimplexQuadrature& quadrature);

// L_gamma f = sum_i (gamma_i + 1 - (sum gamma + k) y_i) d_i f
//           + sum_i y_i (1 - y_i) d_ii f - 2 sum_{i<j} y_i y_j d_ij f
Polynomial<Rational> apply_generator(const Polynomial<Rational>& f, const GammaWeights& gw);
Polynomial<double> apply_generator(const Polynomial<double>& f, const GammaWeights& gw);

// nu_n = n (n + 2 b/alpha - 1) / 2, the decay rate of degree-n modes.
double eigenvalue_nu(int n, const WfParams& params);
// lambda_n = n (n - 1 + sum gamma + k): L_gamma f = -lambda_n f on degree n.
Rational eigenvalue_lambda(int n, const GammaWeights& gw);

// All n with n_i >= 0 and |n| = degree, in a fixed order.
std::vector<Exponent> multi_indices(std::size_t dim, int degree);
// binom(degree + dim - 1, degree)
std::size_t multi_index_count(std::size_t dim, int degree);

inline constexpr std::size_t kMaxBasisDim = 4;
inline constexpr int kMaxBasisDegree = 6;

// Monic basis V_n = y^n + lower terms, orthogonal to all lower degrees.
Polynomial<Rational> basis_monic(const Exponent& n, const GammaWeights& gw);

// Rodrigues basis: d^n [w * y^n (1-|y|)^|n|] / w, expanded exactly.
Polynomial<Rational> basis_rodrigues(const Exponent& n, const GammaWeights& gw);

// Product-of-Jacobi basis built on the stick-breaking coordinates, before
// normalization. Mutually orthogonal.
Polynomial<Rational> basis_jacobi_unnormalized(const Exponent& n, const GammaWeights& gw);
// <P, P>_gamma for the unnormalized product basis, from Gamma functions.
double jacobi_norm_squared(const Exponent& n, const GammaWeights& gw);
// Orthonormal product-of-Jacobi basis.
Polynomial<double> basis_jacobi(const Exponent& n, const GammaWeights& gw);
// Orthonormal basis value at y computed with three-term recurrences.
double evaluate_jacobi_basis(const Exponent& n, const GammaWeights& gw,
                             std::span<const double> y);

// Gram-Schmidt on graded monomials under the exact moment inner product.
// Returns one orthogonal (unnormalized) polynomial per monomial of degree
// <= max_degree, in graded order.
std::vector<Polynomial<Rational>> gram_schmidt_basis(const GammaWeights& gw, int max_degree);

// Classical Jacobi polynomial P_n^{(a,b)}(x) on [-1, 1].
double jacobi_polynomial(int n, double a, double b, double x);

struct TransitionDensity {
  double value = 0.0;
  double tail_term = 0.0;  // magnitude of the max_degree contribution
  int n_terms = 0;         // number of degrees summed (max_degree + 1)
  bool small_time = false;           // t < 0.05: too few terms to trust
  bool truncation_warning = false;   // |tail_term| > 1e-6 |value|
};

inline constexpr double kSmallTime = 0.05;

int max_transition_degree(std::size_t dim);

TransitionDensity transition_density(std::span<const double> y0, std::span<const double> y,
                                     double t, const WfParams& params, int max_degree);

using DensityField = std::function<double(std::span<const double> y, double t)>;

struct ResidualOptions {
  double h_space = 1e-3;
  double h_time = 1e-3;
};

// d p / dt minus the forward operator
//   (b/alpha) sum_i d_i((y_i - p_i) p) + 1/2 sum_i d_ii(y_i (1-y_i) p)
//   - sum_{i<j} d_ij(y_i y_j p)
// evaluated with fourth-order central differences at each grid point.
std::vector<double> forward_equation_residual(const DensityField& density,
                                              const std::vector<Vector>& grid, double t,
                                              const WfParams& params,
                                              const ResidualOptions& options = {});

}  // namespace rpwf
