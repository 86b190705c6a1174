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

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "core/rng.hpp"
#include "core/simplex.hpp"

namespace rpwf {

// Limit diffusion dX = -(b/alpha)(X - p) dt + Sigma(X) dW.
struct WfParams {
  double b_scalar = 1.0;
  double alpha = 1.0;
  Vector p;

  std::size_t k() const { return p.size(); }
  double rate() const { return b_scalar / alpha; }
};

void validate(const WfParams& params);

enum class SdeScheme { kEulerMaruyama };

struct SdeConfig {
  double dt = 1e-3;
  SdeScheme scheme = SdeScheme::kEulerMaruyama;
  // Clamp inside square roots and project back onto the state space. With
  // clamp off, a step that leaves the state space throws kDomain.
  bool clamp = true;
};

// dZ = (-a1 Z + a0 (1 - Z)) dt + sqrt(max(0, Z(1-Z))) dW
struct OneDimWf {
  double a0 = 0.0;
  double a1 = 0.0;
};

void validate(const OneDimWf& od);

// Lower-triangular factor with Sigma Sigma^T = diag(x) - x x^T and zero
// column sums, built from the closed form (not a generic factorization).
Eigen::MatrixXd sigma(std::span<const double> x);

Vector drift(std::span<const double> x, const WfParams& params);

// One Euler-Maruyama step with an explicit standard-normal vector z.
Vector em_step(std::span<const double> x, const WfParams& params,
               const SdeConfig& config, std::span<const double> z);
Vector em_step(std::span<const double> x, const WfParams& params,
               const SdeConfig& config, Rng& rng);

struct PathRecord {
  std::uint64_t seed = 0;
  std::vector<double> t;
  SimplexSeries X;
};

// ceil(t_max/dt) steps; the last step is shortened so the path ends at t_max.
PathRecord simulate_wf(const WfParams& params, std::span<const double> x0,
                       double t_max, const SdeConfig& config, std::uint64_t seed);

// E[X_t] = p + (x0 - p) exp(-(b/alpha) t)
Vector mean_ode(const WfParams& params, std::span<const double> x0, double t);

double marginal_drift(const OneDimWf& od, double z);
double em_step_1d(double z, const OneDimWf& od, const SdeConfig& config, double dt,
                  double normal);

struct ScalarPath {
  std::uint64_t seed = 0;
  std::vector<double> t;
  std::vector<double> z;
};

ScalarPath simulate_marginal_1d(const OneDimWf& od, double z0, double t_max,
                                const SdeConfig& config, std::uint64_t seed);

// Values of X at the given times (ascending) for a single path, without
// storing the path. Times are rounded to the dt grid.
std::vector<Vector> sample_wf_at(const WfParams& params, std::span<const double> x0,
                                 std::span<const double> times, const SdeConfig& config,
                                 std::uint64_t seed);

double sample_marginal_1d_at(const OneDimWf& od, double z0, double t,
                             const SdeConfig& config, std::uint64_t seed);

struct ExitResult {
  bool hit_upper = false;  // left through the upper end first
  double time = 0.0;
};

// First exit of the 1-d process from (lower, upper), started at z0. Crossings
// are detected on the discrete path and, between grid points, by the
// Brownian-bridge crossing probability with the local diffusion coefficient.
ExitResult simulate_exit_1d(const OneDimWf& od, double lower, double upper, double z0,
                            const SdeConfig& config, std::uint64_t seed,
                            double t_cap = 1e6);

// Whether the path enters [0, delta] before time horizon.
bool touches_zero_neighborhood(const OneDimWf& od, double z0, double delta,
                               double horizon, const SdeConfig& config,
                               std::uint64_t seed);

}  // namespace rpwf
