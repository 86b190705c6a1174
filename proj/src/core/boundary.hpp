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
#include <string_view>
#include <vector>

#include "core/wf_sde.hpp"

namespace rpwf {

enum class BoundaryType { kExit, kRegular, kEntrance };

std::string_view to_string(BoundaryType type);

// Feller type of the endpoint whose drift coefficient is a_z:
// exit at 0, regular on (0, 1/2), entrance from 1/2 on.
BoundaryType classify_boundary(double a_z);

// Aggregated frequency of colors J (0-based, nonempty proper subset).
OneDimWf group_to_1d(const WfParams& params, const std::vector<std::size_t>& J);

// sum_{l in J} p_l < alpha / (2 b), compared in exact rational arithmetic.
bool is_recessive(const WfParams& params, const std::vector<std::size_t>& J);
// True when every color other than i together forms a recessive set.
bool is_dominant(const WfParams& params, std::size_t i);

struct ColorBoundary {
  std::size_t color = 0;  // 0-based
  OneDimWf marginal;
  BoundaryType at_zero = BoundaryType::kExit;
  BoundaryType at_one = BoundaryType::kExit;
  bool recessive = false;
  bool dominant = false;
};

struct BoundaryReport {
  std::vector<ColorBoundary> colors;
  bool all_proper_sets_recessive = false;
};

BoundaryReport boundary_report(const WfParams& params);

// S(z) = S_ref + slope * int_{z_ref}^z t^{-2 a0} (1 - t)^{-2 a1} dt.
// Only differences and ratios of S carry meaning.
class ScaleFunction {
 public:
  explicit ScaleFunction(OneDimWf od, double z_ref = 0.5, double S_ref = 0.0, double slope = 1.0);

  // Accepts z in [0, 1]; returns -inf / +inf when the integral diverges at
  // the requested endpoint.
  double operator()(double z) const;
  double derivative(double z) const;
  // slope * int_x^y S'(t) dt for 0 <= x <= y <= 1.
  double increment(double x, double y) const;

  const OneDimWf& marginal() const { return od_; }
  double slope() const { return slope_; }

 private:
  OneDimWf od_;
  double z_ref_;
  double S_ref_;
  double slope_;
};

// m(z) = z^{2 a0 - 1} (1 - z)^{2 a1 - 1} / slope, for z in (0, 1).
double speed_density(const OneDimWf& od, double z, double slope = 1.0);

struct IntervalProblem {
  OneDimWf od;
  double a = 0.0;
  double b = 1.0;
};

void validate(const IntervalProblem& ip);

// P(reach b before a | Z_0 = z0) = (S(z0) - S(a)) / (S(b) - S(a)).
double hitting_prob(const IntervalProblem& ip, double z0);
double hitting_prob(const IntervalProblem& ip, double z0, const ScaleFunction& scale);

double green_function(const IntervalProblem& ip, double x, double s);

using CostRate = std::function<double(double)>;

// E[int_0^tau g(Z_t) dt] with tau the exit time of (a, b), via the Green function.
double expected_cost(const IntervalProblem& ip, double z0, const CostRate& g);
// Same quantity from the hitting probability and two one-sided integrals.
double expected_cost_two_integral(const IntervalProblem& ip, double z0, const CostRate& g);
double mean_exit_time(const IntervalProblem& ip, double z0);

// Limit of the exit/return time ratio at z0: the Beta(2 a0, 2 a1) density.
double return_ratio_density(const OneDimWf& od, double z0);

}  // namespace rpwf
