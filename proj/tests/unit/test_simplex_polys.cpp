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

#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/legendre.hpp>

#include "core/error.hpp"
#include "core/simplex_polys.hpp"
#include "test_util.hpp"

using namespace rpwf;

namespace {

GammaWeights sample_gamma(std::size_t k) {
  // Mixed signs, all > -1.
  std::vector<Rational> g;
  const Rational pool[] = {Rational(1, 2), Rational(-1, 3), Rational(2), Rational(3, 4),
                           Rational(-1, 4)};
  for (std::size_t i = 0; i < k; ++i) g.push_back(pool[i % 5]);
  return GammaWeights::from_rationals(std::move(g));
}

std::vector<Exponent> indices_up_to(std::size_t dim, int degree) {
  std::vector<Exponent> out;
  for (int d = 0; d <= degree; ++d) {
    for (auto& e : multi_indices(dim, d)) out.push_back(e);
  }
  return out;
}

int degree_of(const Exponent& e) {
  int s = 0;
  for (int v : e) s += v;
  return s;
}

}  // namespace

TEST_CASE("polys: gamma weights from WF parameters") {
  const GammaWeights gw = GammaWeights::from_wf(WfParams{1.5, 1.0, {0.2, 0.8}});
  CHECK(gw.value[0] == doctest::Approx(2 * 1.5 * 0.2 - 1));
  CHECK(gw.value[1] == doctest::Approx(2 * 1.5 * 0.8 - 1));
  CHECK(gw.sum() == doctest::Approx(2 * 1.5 - 2));
  CHECK_THROWS_AS(GammaWeights::from_values(std::vector<double>{-1.0, 0.5}), Error);
}

TEST_CASE("polys: Dirichlet density in one dimension is the Beta density") {
  const auto gw = GammaWeights::from_values(std::vector<double>{1.0, 2.0});
  for (double y : {0.1, 0.37, 0.5, 0.93}) {
    const double expect = 12.0 * y * (1 - y) * (1 - y);
    CHECK(dirichlet_density(gw, std::vector<double>{y}) == doctest::Approx(expect).epsilon(1e-13));
  }
  const auto neg = GammaWeights::from_values(std::vector<double>{-0.5, 0.5});
  CHECK(std::isinf(dirichlet_density(neg, std::vector<double>{0.0})));
  CHECK(dirichlet_density(gw, std::vector<double>{0.0}) == 0.0);
  CHECK_THROWS_AS(dirichlet_density(gw, std::vector<double>{1.2}), Error);
}

TEST_CASE("polys: Dirichlet density integrates to one on the triangle") {
  const auto gw = GammaWeights::from_values(std::vector<double>{0.5, 1.0, 2.0});
  // Midpoint rule on the unit triangle, the density is bounded here.
  const int m = 600;
  const double h = 1.0 / m;
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; i + j < m; ++j) {
      const double y1 = (i + 1.0 / 3.0) * h, y2 = (j + 1.0 / 3.0) * h;
      total += dirichlet_density(gw, std::vector<double>{y1, y2}) * 0.5 * h * h;
      if (i + j + 1 < m) {
        const double z1 = (i + 2.0 / 3.0) * h, z2 = (j + 2.0 / 3.0) * h;
        total += dirichlet_density(gw, std::vector<double>{z1, z2}) * 0.5 * h * h;
      }
    }
  }
  CHECK(total == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("polys: quadrature reproduces exact moments") {
  for (std::size_t k : {2u, 3u, 4u}) {
    const GammaWeights gw = sample_gamma(k);
    const SimplexQuadrature q(gw.value, 8);
    double wsum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) wsum += q.weight(i);
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));
    for (const Exponent& e : indices_up_to(gw.dim(), 6)) {
      const double exact = to_double(dirichlet_moment(gw, e));
      const double numeric = q.integrate([&](std::span<const double> y) {
        double m = 1.0;
        for (std::size_t i = 0; i < e.size(); ++i) m *= std::pow(y[i], e[i]);
        return m;
      });
      REQUIRE(numeric == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("polys: multi-index enumeration") {
  CHECK(multi_index_count(2, 3) == 4);
  CHECK(multi_index_count(3, 2) == 6);
  for (std::size_t d = 1; d <= 4; ++d) {
    for (int n = 0; n <= 5; ++n) {
      const auto idx = multi_indices(d, n);
      REQUIRE(idx.size() == multi_index_count(d, n));
      for (const auto& e : idx) REQUIRE(degree_of(e) == n);
    }
  }
}

TEST_CASE("polys: eigenvalues satisfy lambda = 2 nu") {
  const WfParams wp{1.3, 0.7, {0.2, 0.3, 0.5}};
  const GammaWeights gw = GammaWeights::from_wf(wp);
  for (int n = 0; n <= 8; ++n) {
    CHECK(to_double(eigenvalue_lambda(n, gw)) ==
          doctest::Approx(2.0 * eigenvalue_nu(n, wp)).epsilon(1e-13));
  }
  CHECK(eigenvalue_nu(1, wp) == doctest::Approx(1.3 / 0.7));
}

TEST_CASE("polys: product Jacobi basis are exact generator eigenfunctions") {
  for (std::size_t k : {2u, 3u, 4u}) {
    const GammaWeights gw = sample_gamma(k);
    for (const Exponent& n : indices_up_to(gw.dim(), 3)) {
      const auto P = basis_jacobi_unnormalized(n, gw);
      const auto LP = apply_generator(P, gw);
      const auto expect = P * Rational(-eigenvalue_lambda(degree_of(n), gw));
      REQUIRE(LP == expect);
      REQUIRE(P.degree() == degree_of(n));
    }
  }
}

TEST_CASE("polys: monic and Rodrigues bases are eigenfunctions too") {
  const GammaWeights gw = sample_gamma(3);
  for (const Exponent& n : indices_up_to(2, 3)) {
    const Rational lam = -eigenvalue_lambda(degree_of(n), gw);
    const auto V = basis_monic(n, gw);
    const auto U = basis_rodrigues(n, gw);
    REQUIRE(apply_generator(V, gw) == V * lam);
    REQUIRE(apply_generator(U, gw) == U * lam);
  }
}

TEST_CASE("polys: monic basis has leading term y^n") {
  const GammaWeights gw = sample_gamma(3);
  for (const Exponent& n : indices_up_to(2, 4)) {
    const auto V = basis_monic(n, gw);
    for (const Exponent& m : multi_indices(2, degree_of(n))) {
      REQUIRE(V.coefficient(m) == (m == n ? Rational(1) : Rational(0)));
    }
  }
}

TEST_CASE("polys: product basis is exactly orthogonal with Gamma-function norms") {
  for (std::size_t k : {2u, 3u}) {
    const GammaWeights gw = sample_gamma(k);
    const auto idx = indices_up_to(gw.dim(), 4);
    std::vector<Polynomial<Rational>> P;
    for (const auto& n : idx) P.push_back(basis_jacobi_unnormalized(n, gw));
    for (std::size_t a = 0; a < P.size(); ++a) {
      for (std::size_t b = a; b < P.size(); ++b) {
        const Rational ip = inner_product(P[a], P[b], gw);
        if (a != b) {
          REQUIRE(ip == 0);
        } else {
          REQUIRE(to_double(ip) == doctest::Approx(jacobi_norm_squared(idx[a], gw)).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("polys: normalized Jacobi Gram matrix is the identity under quadrature") {
  const WfParams wp{1.0, 1.0, {0.3, 0.3, 0.4}};
  const GammaWeights gw = GammaWeights::from_wf(wp);
  const SimplexQuadrature q(gw.value, 10);
  const auto idx = indices_up_to(2, 4);
  double worst = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const auto pa = basis_jacobi(idx[a], gw);
    for (std::size_t b = 0; b < idx.size(); ++b) {
      const double ip = inner_product(pa, basis_jacobi(idx[b], gw), q);
      worst = std::max(worst, std::abs(ip - (a == b ? 1.0 : 0.0)));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("polys: recurrence evaluation matches the expanded basis") {
  const GammaWeights gw = sample_gamma(4);
  Rng rng(9);
  for (const Exponent& n : indices_up_to(3, 4)) {
    const auto P = basis_jacobi(n, gw);
    for (int trial = 0; trial < 5; ++trial) {
      Vector x = testing::random_simplex_point(rng, 4);
      x.pop_back();
      REQUIRE(evaluate_jacobi_basis(n, gw, x) ==
              doctest::Approx(P.evaluate(x)).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("polys: classical Jacobi polynomials") {
  for (double x : {-0.9, -0.2, 0.4, 0.99}) {
    for (int n = 0; n <= 10; ++n) {
      CHECK(jacobi_polynomial(n, 0.0, 0.0, x) ==
            doctest::Approx(boost::math::legendre_p(n, x)).epsilon(1e-12));
    }
    const double a = 0.7, b = -0.4;
    CHECK(jacobi_polynomial(1, a, b, x) == doctest::Approx((a + 1) + (a + b + 2) * (x - 1) / 2));
    CHECK(jacobi_polynomial(0, a, b, x) == 1.0);
  }
}

TEST_CASE("polys: monic V_n is orthogonal to every lower-degree monomial") {
  const GammaWeights gw = sample_gamma(3);
  for (const Exponent& n : indices_up_to(2, 3)) {
    const auto V = basis_monic(n, gw);
    for (const Exponent& m : indices_up_to(2, degree_of(n) - 1)) {
      REQUIRE(inner_product(V, Polynomial<Rational>::monomial(2, m, Rational(1)), gw) == 0);
    }
  }
}

TEST_CASE("polys: Rodrigues and monic bases are biorthogonal") {
  for (std::size_t k : {2u, 3u}) {
    const GammaWeights gw = sample_gamma(k);
    const auto idx = indices_up_to(gw.dim(), 3);
    for (const auto& n : idx) {
      const auto U = basis_rodrigues(n, gw);
      for (const auto& m : idx) {
        const Rational ip = inner_product(U, basis_monic(m, gw), gw);
        if (n == m) REQUIRE(ip != 0);
        else REQUIRE(ip == 0);
      }
    }
  }
}

TEST_CASE("polys: Gram-Schmidt basis is orthogonal and spans each degree") {
  const GammaWeights gw = sample_gamma(3);
  const auto gs = gram_schmidt_basis(gw, 3);
  REQUIRE(gs.size() == indices_up_to(2, 3).size());
  for (std::size_t a = 0; a < gs.size(); ++a) {
    for (std::size_t b = a + 1; b < gs.size(); ++b) {
      REQUIRE(inner_product(gs[a], gs[b], gw) == 0);
    }
    REQUIRE(apply_generator(gs[a], gw) == gs[a] * Rational(-eigenvalue_lambda(gs[a].degree(), gw)));
  }
}

TEST_CASE("polys: basis range is limited") {
  const GammaWeights gw = sample_gamma(3);
  CHECK_THROWS_AS(basis_monic(Exponent{7, 0}, gw), Error);
  CHECK_THROWS_AS(basis_jacobi(Exponent{1, 0, 0}, gw), Error);
}

TEST_CASE("polys: transition density integrates to one and is reversible") {
  const WfParams wp{1.0, 1.0, {0.5, 0.5}};
  const auto gw = GammaWeights::from_wf(wp);
  const GaussRule rule = gauss_jacobi_unit(60, 0.0, 0.0);
  const Vector y0 = {0.3};
  for (double t : {0.5, 1.0, 2.0}) {
    double total = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      total += rule.weights[i] *
               transition_density(y0, Vector{rule.nodes[i]}, t, wp, 30).value;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    const Vector y = {0.8};
    const double fwd = dirichlet_density(gw, y0) * transition_density(y0, y, t, wp, 30).value;
    const double bwd = dirichlet_density(gw, y) * transition_density(y, y0, t, wp, 30).value;
    CHECK(std::abs(fwd - bwd) < 1e-12);
  }
  const auto late = transition_density(y0, Vector{0.6}, 50.0, wp, 30);
  CHECK(std::abs(late.value - dirichlet_density(gw, Vector{0.6})) < 1e-12);
  CHECK_FALSE(late.truncation_warning);
}

TEST_CASE("polys: transition density in two dimensions") {
  const WfParams wp{1.5, 1.0, {0.2, 0.3, 0.5}};
  const auto gw = GammaWeights::from_wf(wp);
  // Integrate p / pi against pi so the boundary singularity is absorbed by the rule.
  const SimplexQuadrature q(gw.value, 20);
  const Vector y0 = {0.25, 0.25};
  const double total = q.integrate([&](std::span<const double> y) {
    return transition_density(y0, y, 1.0, wp, 25).value / dirichlet_density(gw, y);
  });
  CHECK(total == doctest::Approx(1.0).epsilon(1e-5));
  const auto late = transition_density(y0, Vector{0.4, 0.3}, 40.0, wp, 20);
  CHECK(late.value == doctest::Approx(dirichlet_density(gw, Vector{0.4, 0.3})).epsilon(1e-10));
}

TEST_CASE("polys: transition density argument checks") {
  const WfParams wp{1.0, 1.0, {0.5, 0.5}};
  auto code = [&](Vector y0, Vector y, double t, int deg) {
    try {
      transition_density(y0, y, t, wp, deg);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  CHECK(code({0.0}, {0.5}, 1.0, 10) == ErrorCode::kNotOnSimplex);
  CHECK(code({0.5}, {1.0}, 1.0, 10) == ErrorCode::kNotOnSimplex);
  CHECK(code({0.5}, {0.5}, 0.0, 10) == ErrorCode::kInvalidArgument);
  CHECK(code({0.5}, {0.5}, 1.0, 101) == ErrorCode::kUnsupportedRange);
  const auto small = transition_density(Vector{0.3}, Vector{0.4}, 0.01, wp, 5);
  CHECK(small.small_time);
  CHECK(small.truncation_warning);
}

TEST_CASE("polys: stationary density solves the forward equation") {
  for (const WfParams& wp : {WfParams{1.0, 1.0, {0.5, 0.5}}, WfParams{2.0, 1.0, {0.3, 0.7}}}) {
    const auto gw = GammaWeights::from_wf(wp);
    DensityField f = [&](std::span<const double> y, double) { return dirichlet_density(gw, y); };
    std::vector<Vector> grid;
    for (int i = 1; i <= 50; ++i) grid.push_back({0.05 + 0.9 * (i - 0.5) / 50});
    double worst = 0.0;
    for (double r : forward_equation_residual(f, grid, 1.0, wp)) worst = std::max(worst, std::abs(r));
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("polys: transition density solves the forward equation in time") {
  const WfParams wp{1.0, 1.0, {0.4, 0.6}};
  const Vector y0 = {0.35};
  DensityField f = [&](std::span<const double> y, double t) {
    return transition_density(y0, y, t, wp, 60).value;
  };
  std::vector<Vector> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back({0.1 * i});
  double worst = 0.0;
  for (double r : forward_equation_residual(f, grid, 0.5, wp)) worst = std::max(worst, std::abs(r));
  CHECK(worst < 1e-5);
}

TEST_CASE("polys: forward residual detects a non-solution") {
  const WfParams wp{1.0, 1.0, {0.5, 0.5}};
  DensityField f = [](std::span<const double> y, double) { return 6.0 * y[0] * y[0] * (1 - y[0]); };
  const auto res = forward_equation_residual(f, {{0.3}, {0.6}}, 1.0, wp);
  CHECK(std::abs(res[0]) > 1e-2);
}
