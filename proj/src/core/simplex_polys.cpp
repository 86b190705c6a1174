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

#include "core/simplex_polys.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "core/error.hpp"

namespace rpwf {

namespace {

Rational rising(const Rational& x, int n) {
  Rational out(1);
  for (int j = 0; j < n; ++j) out *= x + j;
  return out;
}

// Generalized binomial coefficient binom(x, r).
Rational binomial(const Rational& x, int r) {
  Rational out(1);
  for (int i = 0; i < r; ++i) out = out * (x - i) / (i + 1);
  return out;
}

int total_degree(const Exponent& e) {
  int s = 0;
  for (int v : e) s += v;
  return s;
}

void check_basis_range(const Exponent& n, const GammaWeights& gw) {
  if (n.size() != gw.dim()) {
    fail(ErrorCode::kDimensionMismatch, "multi-index length must be k - 1");
  }
  for (int v : n) {
    if (v < 0) fail(ErrorCode::kInvalidArgument, "multi-index entries must be >= 0");
  }
  if (gw.dim() > kMaxBasisDim || total_degree(n) > kMaxBasisDegree) {
    std::ostringstream os;
    os << "basis supported for k - 1 <= " << kMaxBasisDim << " and degree <= "
       << kMaxBasisDegree << " (got k - 1 = " << gw.dim() << ", degree = "
       << total_degree(n) << ")";
    fail(ErrorCode::kUnsupportedRange, os.str());
  }
}

// 1 - y_1 - ... - y_{upto-1}
Polynomial<Rational> remaining_mass(std::size_t dim, std::size_t upto) {
  Polynomial<Rational> s = Polynomial<Rational>::constant(dim, Rational(1));
  for (std::size_t l = 0; l < upto; ++l) s -= Polynomial<Rational>::variable(dim, l);
  return s;
}

// Jacobi parameter attached to (1 - t_j) in the stick-breaking factorization.
template <class T>
T stick_exponent(const Exponent& n, const std::vector<T>& gamma, std::size_t j) {
  T a(-1);
  for (std::size_t l = j + 1; l < n.size(); ++l) a += T(2 * n[l]);
  for (std::size_t l = j + 1; l < gamma.size(); ++l) a += gamma[l] + T(1);
  return a;
}

double log_jacobi_unit_norm(int n, double a, double b) {
  using boost::math::lgamma;
  if (n == 0) return lgamma(a + 1.0) + lgamma(b + 1.0) - lgamma(a + b + 2.0);
  const double nn = n;
  return lgamma(nn + a + 1.0) + lgamma(nn + b + 1.0) - std::log(2.0 * nn + a + b + 1.0) -
         lgamma(nn + a + b + 1.0) - lgamma(nn + 1.0);
}

template <class Scalar>
Polynomial<Scalar> generator_impl(const Polynomial<Scalar>& f, const std::vector<Scalar>& gamma) {
  const std::size_t d = f.dim();
  Scalar total(0);
  for (const Scalar& g : gamma) total += g;
  total += Scalar(static_cast<int>(gamma.size()));

  Polynomial<Scalar> out(d);
  std::vector<Polynomial<Scalar>> y;
  for (std::size_t i = 0; i < d; ++i) y.push_back(Polynomial<Scalar>::variable(d, i));
  const auto one = Polynomial<Scalar>::constant(d, Scalar(1));

  for (std::size_t i = 0; i < d; ++i) {
    const Polynomial<Scalar> di = f.derivative(i);
    out += (one * (gamma[i] + Scalar(1)) - y[i] * total) * di;
    out += y[i] * (one - y[i]) * di.derivative(i);
    for (std::size_t j = i + 1; j < d; ++j) {
      out -= (y[i] * y[j] * Scalar(2)) * di.derivative(j);
    }
  }
  return out;
}

}  // namespace

GammaWeights GammaWeights::from_values(std::span<const double> gamma) {
  std::vector<Rational> exact;
  exact.reserve(gamma.size());
  for (double g : gamma) {
    require(std::isfinite(g), ErrorCode::kInvalidArgument, "gamma must be finite");
    exact.emplace_back(g);
  }
  return from_rationals(std::move(exact));
}

GammaWeights GammaWeights::from_rationals(std::vector<Rational> gamma) {
  require(gamma.size() >= 2, ErrorCode::kDimensionMismatch, "need k >= 2 weights");
  GammaWeights gw;
  for (const Rational& g : gamma) {
    require(g > -1, ErrorCode::kInvalidArgument, "gamma entries must exceed -1");
    gw.value.push_back(to_double(g));
  }
  gw.exact = std::move(gamma);
  return gw;
}

GammaWeights GammaWeights::from_wf(const WfParams& params) {
  validate(params);
  const Rational ratio = Rational(params.b_scalar) / Rational(params.alpha);
  std::vector<Rational> gamma;
  for (double p : params.p) gamma.push_back(2 * ratio * Rational(p) - 1);
  return from_rationals(std::move(gamma));
}

Rational GammaWeights::sum_exact() const {
  Rational s(0);
  for (const Rational& g : exact) s += g;
  return s;
}

double GammaWeights::sum() const { return simplex_sum(value); }

void validate_tpoint(std::span<const double> y, std::size_t dim) {
  require(y.size() == dim, ErrorCode::kDimensionMismatch, "point must have k - 1 coordinates");
  constexpr double tol = 1e-12;
  double s = 0.0;
  for (double v : y) {
    require(std::isfinite(v) && v >= -tol, ErrorCode::kNotOnSimplex,
            "point coordinates must be >= 0");
    s += v;
  }
  require(s <= 1.0 + tol, ErrorCode::kNotOnSimplex, "point coordinates must sum to <= 1");
}

double log_dirichlet_normalizer(const GammaWeights& gw) {
  using boost::math::lgamma;
  double out = lgamma(gw.sum() + static_cast<double>(gw.k()));
  for (double g : gw.value) out -= lgamma(g + 1.0);
  return out;
}

double dirichlet_log_density(const GammaWeights& gw, std::span<const double> y) {
  validate_tpoint(y, gw.dim());
  double out = log_dirichlet_normalizer(gw);
  double rest = 1.0;
  auto add = [&](double coordinate, double exponent) {
    if (exponent == 0.0) return;
    const double c = std::max(coordinate, 0.0);
    if (c == 0.0) {
      out += exponent > 0.0 ? -std::numeric_limits<double>::infinity()
                            : std::numeric_limits<double>::infinity();
      return;
    }
    out += exponent * std::log(c);
  };
  for (std::size_t i = 0; i < y.size(); ++i) {
    add(y[i], gw.value[i]);
    rest -= y[i];
  }
  add(rest, gw.value.back());
  return out;
}

double dirichlet_density(const GammaWeights& gw, std::span<const double> y) {
  return std::exp(dirichlet_log_density(gw, y));
}

Rational dirichlet_moment(const GammaWeights& gw, const Exponent& e) {
  require(e.size() == gw.dim(), ErrorCode::kDimensionMismatch, "exponent length must be k - 1");
  Rational num(1);
  for (std::size_t i = 0; i < e.size(); ++i) num *= rising(gw.exact[i] + 1, e[i]);
  return num / rising(gw.sum_exact() + static_cast<int>(gw.k()), total_degree(e));
}

Rational inner_product(const Polynomial<Rational>& f, const Polynomial<Rational>& g,
                       const GammaWeights& gw) {
  const Polynomial<Rational> fg = f * g;
  Rational out(0);
  for (const auto& [e, c] : fg.terms()) out += c * dirichlet_moment(gw, e);
  return out;
}

double inner_product(const Polynomial<double>& f, const Polynomial<double>& g,
                     const SimplexQuadrature& quadrature) {
  return quadrature.integrate(
      [&](std::span<const double> y) { return f.evaluate(y) * g.evaluate(y); });
}

Polynomial<Rational> apply_generator(const Polynomial<Rational>& f, const GammaWeights& gw) {
  require(f.dim() == gw.dim(), ErrorCode::kDimensionMismatch, "polynomial dimension must be k - 1");
  return generator_impl(f, gw.exact);
}

Polynomial<double> apply_generator(const Polynomial<double>& f, const GammaWeights& gw) {
  require(f.dim() == gw.dim(), ErrorCode::kDimensionMismatch, "polynomial dimension must be k - 1");
  return generator_impl(f, gw.value);
}

double eigenvalue_nu(int n, const WfParams& params) {
  require(n >= 0, ErrorCode::kInvalidArgument, "degree must be >= 0");
  const double nn = n;
  return nn * (nn + 2.0 * params.rate() - 1.0) / 2.0;
}

Rational eigenvalue_lambda(int n, const GammaWeights& gw) {
  require(n >= 0, ErrorCode::kInvalidArgument, "degree must be >= 0");
  return Rational(n) * (Rational(n - 1) + gw.sum_exact() + static_cast<int>(gw.k()));
}

std::vector<Exponent> multi_indices(std::size_t dim, int degree) {
  std::vector<Exponent> out;
  if (degree < 0) return out;
  Exponent current(dim, 0);
  // Recursive fill: first coordinate takes the largest share first.
  std::function<void(std::size_t, int)> fill = [&](std::size_t i, int left) {
    if (i + 1 == dim) {
      current[i] = left;
      out.push_back(current);
      return;
    }
    for (int v = left; v >= 0; --v) {
      current[i] = v;
      fill(i + 1, left - v);
    }
  };
  if (dim == 0) {
    if (degree == 0) out.push_back(current);
    return out;
  }
  fill(0, degree);
  return out;
}

std::size_t multi_index_count(std::size_t dim, int degree) {
  // binom(degree + dim - 1, degree)
  std::size_t out = 1;
  for (int i = 1; i <= degree; ++i) {
    out = out * (static_cast<std::size_t>(degree) + dim - static_cast<std::size_t>(i)) /
          static_cast<std::size_t>(i);
  }
  return out;
}

Polynomial<Rational> basis_monic(const Exponent& n, const GammaWeights& gw) {
  check_basis_range(n, gw);
  const std::size_t d = gw.dim();
  const int degree = total_degree(n);
  const Rational c = gw.sum_exact() + static_cast<int>(gw.k()) - 1;
  Polynomial<Rational> out(d);
  Exponent m(d, 0);
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    if (i == d) {
      Rational coeff(1);
      for (std::size_t l = 0; l < d; ++l) {
        if ((n[l] - m[l]) % 2 != 0) coeff = -coeff;
        coeff *= binomial(Rational(n[l]), m[l]);
        for (int j = m[l]; j < n[l]; ++j) coeff *= gw.exact[l] + 1 + j;
      }
      // (c)_{|n|+|m|} / (c)_{2|n|}
      for (int j = degree + total_degree(m); j < 2 * degree; ++j) coeff /= c + j;
      out.add_term(m, coeff);
      return;
    }
    for (int v = 0; v <= n[i]; ++v) {
      m[i] = v;
      visit(i + 1);
    }
  };
  visit(0);
  return out;
}

Polynomial<Rational> basis_rodrigues(const Exponent& n, const GammaWeights& gw) {
  check_basis_range(n, gw);
  const std::size_t d = gw.dim();
  const Rational& gamma_last = gw.exact.back();
  // Term: coeff * prod y_i^(gamma_i + e_i) * (1-|y|)^(gamma_k + f), keyed by (e, f).
  using Key = std::pair<Exponent, int>;
  std::map<Key, Rational> terms;
  terms[{n, total_degree(n)}] = Rational(1);
  for (std::size_t i = 0; i < d; ++i) {
    for (int r = 0; r < n[i]; ++r) {
      std::map<Key, Rational> next;
      for (const auto& [key, coeff] : terms) {
        const auto& [e, f] = key;
        const Rational from_y = gw.exact[i] + e[i];
        if (from_y != 0) {
          Exponent e2 = e;
          --e2[i];
          next[{e2, f}] += coeff * from_y;
        }
        const Rational from_rest = gamma_last + f;
        if (from_rest != 0) next[{e, f - 1}] -= coeff * from_rest;
      }
      terms.clear();
      for (auto& [key, coeff] : next) {
        if (coeff != 0) terms.emplace(key, coeff);
      }
    }
  }
  Polynomial<Rational> out(d);
  const Polynomial<Rational> rest = remaining_mass(d, d);
  for (const auto& [key, coeff] : terms) {
    const auto& [e, f] = key;
    // Dividing by the weight must leave nonnegative integer powers.
    bool exact_division = f >= 0;
    for (int v : e) exact_division = exact_division && v >= 0;
    if (!exact_division) {
      fail(ErrorCode::kInternal, "Rodrigues quotient is not a polynomial");
    }
    out += Polynomial<Rational>::monomial(d, e, coeff) * pow(rest, f);
  }
  return out;
}

Polynomial<Rational> basis_jacobi_unnormalized(const Exponent& n, const GammaWeights& gw) {
  check_basis_range(n, gw);
  const std::size_t d = gw.dim();
  Polynomial<Rational> out = Polynomial<Rational>::constant(d, Rational(1));
  for (std::size_t j = 0; j < d; ++j) {
    const Rational a = stick_exponent(n, gw.exact, j);
    const Rational& b = gw.exact[j];
    const auto yj = Polynomial<Rational>::variable(d, j);
    const Polynomial<Rational> shifted = yj - remaining_mass(d, j);
    // s^n P_n^{(a,b)}(2 y/s - 1) = sum_m binom(n+a, n-m) binom(n+b, m) (y - s)^m y^(n-m)
    Polynomial<Rational> factor(d);
    const int nj = n[j];
    for (int m = 0; m <= nj; ++m) {
      const Rational coeff = binomial(a + nj, nj - m) * binomial(b + nj, m);
      factor += pow(shifted, m) * pow(yj, nj - m) * coeff;
    }
    out = out * factor;
  }
  return out;
}

double jacobi_norm_squared(const Exponent& n, const GammaWeights& gw) {
  require(n.size() == gw.dim(), ErrorCode::kDimensionMismatch, "multi-index length must be k - 1");
  double log_norm = log_dirichlet_normalizer(gw);
  for (std::size_t j = 0; j < n.size(); ++j) {
    log_norm += log_jacobi_unit_norm(n[j], stick_exponent(n, gw.value, j), gw.value[j]);
  }
  return std::exp(log_norm);
}

Polynomial<double> basis_jacobi(const Exponent& n, const GammaWeights& gw) {
  Polynomial<double> out = basis_jacobi_unnormalized(n, gw).cast<double>();
  out *= 1.0 / std::sqrt(jacobi_norm_squared(n, gw));
  return out;
}

double jacobi_polynomial(int n, double a, double b, double x) {
  require(n >= 0, ErrorCode::kInvalidArgument, "degree must be >= 0");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
  for (int k = 2; k <= n; ++k) {
    const double kk = k;
    const double s = 2.0 * kk + a + b;
    const double lhs = 2.0 * kk * (kk + a + b) * (s - 2.0);
    const double next = ((s - 1.0) * (s * (s - 2.0) * x + a * a - b * b) * cur -
                         2.0 * (kk + a - 1.0) * (kk + b - 1.0) * s * prev) /
                        lhs;
    prev = cur;
    cur = next;
  }
  return cur;
}

double evaluate_jacobi_basis(const Exponent& n, const GammaWeights& gw,
                             std::span<const double> y) {
  require(n.size() == gw.dim() && y.size() == gw.dim(), ErrorCode::kDimensionMismatch,
          "multi-index and point must have k - 1 coordinates");
  double value = 1.0;
  double remaining = 1.0;
  for (std::size_t j = 0; j < n.size(); ++j) {
    const double a = stick_exponent(n, gw.value, j);
    if (n[j] > 0) {
      require(remaining > 0.0, ErrorCode::kDomain, "point on the simplex face s_j = 0");
      const double x = 2.0 * y[j] / remaining - 1.0;
      value *= std::pow(remaining, n[j]) * jacobi_polynomial(n[j], a, gw.value[j], x);
    }
    remaining -= y[j];
  }
  return value / std::sqrt(jacobi_norm_squared(n, gw));
}

std::vector<Polynomial<Rational>> gram_schmidt_basis(const GammaWeights& gw, int max_degree) {
  require(gw.dim() <= kMaxBasisDim && max_degree <= kMaxBasisDegree, ErrorCode::kUnsupportedRange,
          "Gram-Schmidt basis limited to k - 1 <= 4 and degree <= 6");
  const std::size_t d = gw.dim();
  std::vector<Polynomial<Rational>> basis;
  std::vector<Rational> norms;
  for (int degree = 0; degree <= max_degree; ++degree) {
    for (const Exponent& e : multi_indices(d, degree)) {
      Polynomial<Rational> v = Polynomial<Rational>::monomial(d, e, Rational(1));
      const Polynomial<Rational> m = v;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        v -= basis[j] * (inner_product(m, basis[j], gw) / norms[j]);
      }
      norms.push_back(inner_product(v, v, gw));
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

int max_transition_degree(std::size_t dim) { return dim == 1 ? 100 : 40; }

TransitionDensity transition_density(std::span<const double> y0, std::span<const double> y,
                                     double t, const WfParams& params, int max_degree) {
  const GammaWeights gw = GammaWeights::from_wf(params);
  const std::size_t d = gw.dim();
  require(t > 0.0 && std::isfinite(t), ErrorCode::kInvalidArgument, "t must be > 0");
  require(d <= kMaxBasisDim, ErrorCode::kUnsupportedRange, "transition density supports k <= 5");
  if (max_degree < 0 || max_degree > max_transition_degree(d)) {
    std::ostringstream os;
    os << "max_degree must lie in [0, " << max_transition_degree(d) << "] for k = " << d + 1;
    fail(ErrorCode::kUnsupportedRange, os.str());
  }
  auto check_interior = [d](std::span<const double> point, const char* name) {
    validate_tpoint(point, d);
    double s = 0.0;
    for (double v : point) {
      require(v > 0.0, ErrorCode::kNotOnSimplex, std::string(name) + " must be interior");
      s += v;
    }
    require(s < 1.0, ErrorCode::kNotOnSimplex, std::string(name) + " must be interior");
  };
  check_interior(y0, "y0");
  check_interior(y, "y");

  TransitionDensity out;
  out.small_time = t < kSmallTime;
  double series = 0.0;
  double last = 0.0;
  for (int degree = 0; degree <= max_degree; ++degree) {
    double block = 0.0;
    for (const Exponent& n : multi_indices(d, degree)) {
      block += evaluate_jacobi_basis(n, gw, y) * evaluate_jacobi_basis(n, gw, y0);
    }
    last = std::exp(-eigenvalue_nu(degree, params) * t) * block;
    series += last;
  }
  const double weight = dirichlet_density(gw, y);
  out.value = weight * series;
  out.tail_term = std::abs(weight * last);
  out.n_terms = max_degree + 1;
  out.truncation_warning = out.tail_term > 1e-6 * std::abs(out.value);
  return out;
}

namespace {

using Field = std::function<double(const Vector&)>;

double d1(const Field& f, Vector y, std::size_t i, double h) {
  const double x = y[i];
  y[i] = x + 2 * h; const double f2 = f(y);
  y[i] = x + h;     const double f1 = f(y);
  y[i] = x - h;     const double m1 = f(y);
  y[i] = x - 2 * h; const double m2 = f(y);
  return (-f2 + 8.0 * f1 - 8.0 * m1 + m2) / (12.0 * h);
}

double d2(const Field& f, Vector y, std::size_t i, double h) {
  const double x = y[i];
  const double f0 = f(y);
  y[i] = x + 2 * h; const double f2 = f(y);
  y[i] = x + h;     const double f1 = f(y);
  y[i] = x - h;     const double m1 = f(y);
  y[i] = x - 2 * h; const double m2 = f(y);
  return (-f2 + 16.0 * f1 - 30.0 * f0 + 16.0 * m1 - m2) / (12.0 * h * h);
}

double d11(const Field& f, const Vector& y, std::size_t i, std::size_t j, double h) {
  const Field inner = [&](const Vector& z) { return d1(f, z, j, h); };
  return d1(inner, y, i, h);
}

}  // namespace

std::vector<double> forward_equation_residual(const DensityField& density,
                                              const std::vector<Vector>& grid, double t,
                                              const WfParams& params,
                                              const ResidualOptions& options) {
  validate(params);
  const std::size_t d = params.k() - 1;
  const double rate = params.rate();
  const double ht = options.h_time;
  const double hs = options.h_space;
  std::vector<double> residual;
  residual.reserve(grid.size());
  for (const Vector& y : grid) {
    require(y.size() == d, ErrorCode::kDimensionMismatch, "grid points must have k - 1 coordinates");
    auto at_time = [&](double s) { return density(y, s); };
    const double dpdt = (-at_time(t + 2 * ht) + 8.0 * at_time(t + ht) - 8.0 * at_time(t - ht) +
                         at_time(t - 2 * ht)) /
                        (12.0 * ht);
    double rhs = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const Field drift_flux = [&, i](const Vector& z) { return (z[i] - params.p[i]) * density(z, t); };
      const Field variance = [&, i](const Vector& z) { return z[i] * (1.0 - z[i]) * density(z, t); };
      rhs += rate * d1(drift_flux, y, i, hs);
      rhs += 0.5 * d2(variance, y, i, hs);
      for (std::size_t j = i + 1; j < d; ++j) {
        const Field covariance = [&, i, j](const Vector& z) { return z[i] * z[j] * density(z, t); };
        rhs -= d11(covariance, y, i, j, hs);
      }
    }
    residual.push_back(dpdt - rhs);
  }
  return residual;
}

}  // namespace rpwf
