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

#include "core/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "core/error.hpp"
#include "core/polynomial.hpp"

namespace rpwf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInnerTol = 1e-13;
constexpr double kOuterTol = 1e-12;

void check_subset(const WfParams& params, const std::vector<std::size_t>& J) {
  validate(params);
  const std::size_t k = params.k();
  std::set<std::size_t> seen;
  for (std::size_t j : J) {
    if (j >= k) {
      std::ostringstream os;
      os << "color index " << j + 1 << " outside 1.." << k;
      fail(ErrorCode::kInvalidArgument, os.str());
    }
    require(seen.insert(j).second, ErrorCode::kInvalidArgument, "color set has duplicates");
  }
  require(!seen.empty() && seen.size() < k, ErrorCode::kNotAPartition,
          "color set must be a nonempty proper subset");
}

// int_x^y t^{-2 a0} (1 - t)^{-2 a1} dt for 0 <= x <= y <= 1.
double scale_integral(const OneDimWf& od, double x, double y) {
  if (x == y) return 0.0;
  const double e0 = -2.0 * od.a0;
  const double e1 = -2.0 * od.a1;
  if ((x == 0.0 && e0 <= -1.0) || (y == 1.0 && e1 <= -1.0)) return kInf;
  auto f = [&](double t, double tc) {
    const double lower = (x == 0.0 && tc < 0.0) ? -tc : t;
    const double upper = (y == 1.0 && tc > 0.0) ? tc : 1.0 - t;
    return std::pow(lower, e0) * std::pow(upper, e1);
  };
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, x, y, kInnerTol);
}

double piece(const std::function<double(double)>& f, double lo, double hi) {
  if (hi <= lo) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 12, kOuterTol);
}

void check_point(const IntervalProblem& ip, double z, const char* name) {
  if (!(z >= ip.a && z <= ip.b)) {
    std::ostringstream os;
    os << name << " = " << z << " outside [" << ip.a << ", " << ip.b << "]";
    fail(ErrorCode::kOutOfInterval, os.str());
  }
}

}  // namespace

std::string_view to_string(BoundaryType type) {
  switch (type) {
    case BoundaryType::kExit: return "exit";
    case BoundaryType::kRegular: return "regular";
    case BoundaryType::kEntrance: return "entrance";
  }
  return "unknown";
}

BoundaryType classify_boundary(double a_z) {
  require(std::isfinite(a_z) && a_z >= 0.0, ErrorCode::kInvalidArgument,
          "boundary drift coefficient must be >= 0");
  if (a_z == 0.0) return BoundaryType::kExit;
  if (a_z < 0.5) return BoundaryType::kRegular;
  return BoundaryType::kEntrance;
}

OneDimWf group_to_1d(const WfParams& params, const std::vector<std::size_t>& J) {
  check_subset(params, J);
  double mass = 0.0;
  for (std::size_t j : J) mass += params.p[j];
  OneDimWf od;
  od.a0 = params.rate() * mass;
  od.a1 = std::max(0.0, params.rate() - od.a0);
  return od;
}

bool is_recessive(const WfParams& params, const std::vector<std::size_t>& J) {
  check_subset(params, J);
  Rational mass(0);
  for (std::size_t j : J) mass += Rational(params.p[j]);
  return 2 * Rational(params.b_scalar) * mass < Rational(params.alpha);
}

bool is_dominant(const WfParams& params, std::size_t i) {
  validate(params);
  require(i < params.k(), ErrorCode::kInvalidArgument, "color index out of range");
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < params.k(); ++j) {
    if (j != i) rest.push_back(j);
  }
  return is_recessive(params, rest);
}

BoundaryReport boundary_report(const WfParams& params) {
  validate(params);
  BoundaryReport report;
  double min_p = *std::min_element(params.p.begin(), params.p.end());
  report.all_proper_sets_recessive =
      Rational(params.alpha) > 2 * Rational(params.b_scalar) * (1 - Rational(min_p));
  for (std::size_t i = 0; i < params.k(); ++i) {
    ColorBoundary c;
    c.color = i;
    c.marginal = group_to_1d(params, {i});
    c.at_zero = classify_boundary(c.marginal.a0);
    c.at_one = classify_boundary(std::max(c.marginal.a1, 0.0));
    c.recessive = is_recessive(params, {i});
    c.dominant = is_dominant(params, i);
    report.colors.push_back(c);
  }
  return report;
}

ScaleFunction::ScaleFunction(OneDimWf od, double z_ref, double S_ref, double slope)
    : od_(od), z_ref_(z_ref), S_ref_(S_ref), slope_(slope) {
  validate(od_);
  require(z_ref > 0.0 && z_ref < 1.0, ErrorCode::kOutOfInterval, "z_ref must lie in (0, 1)");
  require(std::isfinite(S_ref), ErrorCode::kInvalidArgument, "S_ref must be finite");
  require(std::isfinite(slope) && slope > 0.0, ErrorCode::kInvalidArgument, "slope must be > 0");
}

double ScaleFunction::operator()(double z) const {
  require(z >= 0.0 && z <= 1.0, ErrorCode::kOutOfInterval, "z must lie in [0, 1]");
  if (z >= z_ref_) return S_ref_ + slope_ * scale_integral(od_, z_ref_, z);
  return S_ref_ - slope_ * scale_integral(od_, z, z_ref_);
}

double ScaleFunction::derivative(double z) const {
  require(z > 0.0 && z < 1.0, ErrorCode::kOutOfInterval, "z must lie in (0, 1)");
  return slope_ * std::pow(z, -2.0 * od_.a0) * std::pow(1.0 - z, -2.0 * od_.a1);
}

double ScaleFunction::increment(double x, double y) const {
  require(0.0 <= x && x <= y && y <= 1.0, ErrorCode::kOutOfInterval,
          "increment needs 0 <= x <= y <= 1");
  return slope_ * scale_integral(od_, x, y);
}

double speed_density(const OneDimWf& od, double z, double slope) {
  validate(od);
  require(z > 0.0 && z < 1.0, ErrorCode::kOutOfInterval, "z must lie in (0, 1)");
  require(std::isfinite(slope) && slope > 0.0, ErrorCode::kInvalidArgument, "slope must be > 0");
  return std::pow(z, 2.0 * od.a0 - 1.0) * std::pow(1.0 - z, 2.0 * od.a1 - 1.0) / slope;
}

void validate(const IntervalProblem& ip) {
  validate(ip.od);
  require(0.0 < ip.a && ip.a < ip.b && ip.b < 1.0, ErrorCode::kOutOfInterval,
          "interval needs 0 < a < b < 1");
}

double hitting_prob(const IntervalProblem& ip, double z0) {
  return hitting_prob(ip, z0, ScaleFunction(ip.od));
}

double hitting_prob(const IntervalProblem& ip, double z0, const ScaleFunction& scale) {
  validate(ip);
  check_point(ip, z0, "z0");
  if (z0 == ip.a) return 0.0;
  if (z0 == ip.b) return 1.0;
  const double Sa = scale(ip.a);
  const double u = (scale(z0) - Sa) / (scale(ip.b) - Sa);
  return std::clamp(u, 0.0, 1.0);
}

double green_function(const IntervalProblem& ip, double x, double s) {
  validate(ip);
  check_point(ip, x, "x");
  check_point(ip, s, "s");
  const double total = scale_integral(ip.od, ip.a, ip.b);
  const double lo = std::min(x, s);
  const double hi = std::max(x, s);
  return 2.0 * scale_integral(ip.od, ip.a, lo) * scale_integral(ip.od, hi, ip.b) / total *
         speed_density(ip.od, s);
}

double expected_cost(const IntervalProblem& ip, double z0, const CostRate& g) {
  validate(ip);
  check_point(ip, z0, "z0");
  auto integrand = [&](double s) { return green_function(ip, z0, s) * g(s); };
  return piece(integrand, ip.a, z0) + piece(integrand, z0, ip.b);
}

double expected_cost_two_integral(const IntervalProblem& ip, double z0, const CostRate& g) {
  validate(ip);
  check_point(ip, z0, "z0");
  const double u = hitting_prob(ip, z0);
  const OneDimWf& od = ip.od;
  auto above = [&](double t) {
    return scale_integral(od, t, ip.b) * speed_density(od, t) * g(t);
  };
  auto below = [&](double t) {
    return scale_integral(od, ip.a, t) * speed_density(od, t) * g(t);
  };
  return 2.0 * (u * piece(above, z0, ip.b) + (1.0 - u) * piece(below, ip.a, z0));
}

double mean_exit_time(const IntervalProblem& ip, double z0) {
  return expected_cost(ip, z0, [](double) { return 1.0; });
}

double return_ratio_density(const OneDimWf& od, double z0) {
  validate(od);
  require(od.a0 > 0.0 && od.a1 > 0.0, ErrorCode::kInvalidArgument,
          "return ratio density needs a0 > 0 and a1 > 0");
  require(z0 > 0.0 && z0 < 1.0, ErrorCode::kOutOfInterval, "z0 must lie in (0, 1)");
  const boost::math::beta_distribution<double> dist(2.0 * od.a0, 2.0 * od.a1);
  return boost::math::pdf(dist, z0);
}

}  // namespace rpwf
