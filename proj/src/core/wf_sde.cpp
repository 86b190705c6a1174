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

#include "core/wf_sde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace rpwf {

void validate(const WfParams& params) {
  require(params.b_scalar > 0.0 && std::isfinite(params.b_scalar),
          ErrorCode::kZeroFixedTotal, "b must be > 0");
  require(params.alpha > 0.0 && std::isfinite(params.alpha), ErrorCode::kNonPositiveAlpha,
          "alpha must be > 0");
  require(params.p.size() >= 2, ErrorCode::kDimensionMismatch, "p needs k >= 2 components");
  for (double v : params.p) {
    require(v > 0.0, ErrorCode::kInvalidArgument, "p must be strictly positive");
  }
  validate_simplex(params.p, 1e-10, "p");
}

void validate(const OneDimWf& od) {
  require(od.a0 >= 0.0 && od.a1 >= 0.0 && std::isfinite(od.a0) && std::isfinite(od.a1),
          ErrorCode::kInvalidArgument, "a0 and a1 must be >= 0");
}

Eigen::MatrixXd sigma(std::span<const double> x) {
  validate_simplex(x, 1e-10, "x");
  const auto k = static_cast<Eigen::Index>(x.size());
  // tail[i] = x_i + ... + x_{k-1}
  std::vector<double> tail(x.size() + 1, 0.0);
  for (Eigen::Index i = k - 1; i >= 0; --i) tail[i] = tail[i + 1] + std::max(0.0, x[i]);

  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const double xj = x[j];
    if (!(xj > 0.0)) continue;
    s(j, j) = std::sqrt(xj * tail[j + 1] / tail[j]);
    if (!(tail[j + 1] > 0.0)) continue;
    const double column_scale = std::sqrt(xj / (tail[j] * tail[j + 1]));
    for (Eigen::Index i = j + 1; i < k; ++i) {
      if (x[i] > 0.0) s(i, j) = -x[i] * column_scale;
    }
  }
  return s;
}

Vector drift(std::span<const double> x, const WfParams& params) {
  require(x.size() == params.k(), ErrorCode::kDimensionMismatch, "x and p differ in length");
  Vector out(x.size());
  const double rate = params.rate();
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = -rate * (x[i] - params.p[i]);
  return out;
}

namespace {

void finish_step(Vector& next, const SdeConfig& config) {
  if (config.clamp) {
    project_to_simplex(next);
    return;
  }
  for (double v : next) {
    if (v < 0.0) fail(ErrorCode::kDomain, "Euler-Maruyama step left the simplex");
  }
}

Vector em_step_dt(std::span<const double> x, const WfParams& params, double dt,
                  const SdeConfig& config, std::span<const double> z) {
  require(z.size() == x.size(), ErrorCode::kDimensionMismatch, "noise vector has wrong length");
  const Eigen::MatrixXd s = sigma(x);
  const Vector mu = drift(x, params);
  const double sqrt_dt = std::sqrt(dt);
  Vector next(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double noise = 0.0;
    for (std::size_t j = 0; j <= i; ++j) noise += s(i, j) * z[j];
    next[i] = x[i] + mu[i] * dt + sqrt_dt * noise;
  }
  finish_step(next, config);
  return next;
}

void check_config(const SdeConfig& config) {
  require(config.dt > 0.0 && std::isfinite(config.dt), ErrorCode::kInvalidArgument,
          "dt must be > 0");
}

std::uint64_t step_count(double t, double dt) {
  const double q = t / dt;
  double n = std::ceil(q);
  if (q - (n - 1.0) <= 1e-9 * std::max(1.0, q)) n -= 1.0;
  return static_cast<std::uint64_t>(std::max(0.0, n));
}

}  // namespace

Vector em_step(std::span<const double> x, const WfParams& params,
               const SdeConfig& config, std::span<const double> z) {
  check_config(config);
  return em_step_dt(x, params, config.dt, config, z);
}

Vector em_step(std::span<const double> x, const WfParams& params,
               const SdeConfig& config, Rng& rng) {
  Vector z(x.size());
  for (double& v : z) v = rng.normal();
  return em_step(x, params, config, z);
}

PathRecord simulate_wf(const WfParams& params, std::span<const double> x0,
                       double t_max, const SdeConfig& config, std::uint64_t seed) {
  validate(params);
  check_config(config);
  require(x0.size() == params.k(), ErrorCode::kDimensionMismatch, "x0 and p differ in length");
  validate_simplex(x0, 1e-10, "x0");
  require(t_max >= 0.0, ErrorCode::kInvalidArgument, "t_max must be >= 0");

  const std::uint64_t steps = step_count(t_max, config.dt);
  PathRecord path;
  path.seed = seed;
  path.X = SimplexSeries(params.k());
  path.X.reserve(steps + 1);
  path.t.reserve(steps + 1);
  Rng rng(seed);
  Vector x(x0.begin(), x0.end());
  Vector z(x.size());
  path.t.push_back(0.0);
  path.X.push_back(x);
  for (std::uint64_t s = 1; s <= steps; ++s) {
    const double t_prev = static_cast<double>(s - 1) * config.dt;
    const double t_next = s == steps ? t_max : static_cast<double>(s) * config.dt;
    for (double& v : z) v = rng.normal();
    x = em_step_dt(x, params, t_next - t_prev, config, z);
    path.t.push_back(t_next);
    path.X.push_back(x);
  }
  return path;
}

Vector mean_ode(const WfParams& params, std::span<const double> x0, double t) {
  require(t >= 0.0, ErrorCode::kInvalidArgument, "t must be >= 0");
  require(x0.size() == params.k(), ErrorCode::kDimensionMismatch, "x0 and p differ in length");
  const double decay = std::exp(-params.rate() * t);
  Vector out(x0.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = params.p[i] + (x0[i] - params.p[i]) * decay;
  }
  return out;
}

double marginal_drift(const OneDimWf& od, double z) {
  return -od.a1 * z + od.a0 * (1.0 - z);
}

double em_step_1d(double z, const OneDimWf& od, const SdeConfig& config, double dt,
                  double normal) {
  double variance = z * (1.0 - z);
  if (config.clamp) variance = std::max(0.0, variance);
  else if (variance < 0.0) fail(ErrorCode::kDomain, "marginal path left [0, 1]");
  double next = z + marginal_drift(od, z) * dt + std::sqrt(variance * dt) * normal;
  if (config.clamp) {
    next = std::clamp(next, 0.0, 1.0);
  } else if (next < 0.0 || next > 1.0) {
    fail(ErrorCode::kDomain, "marginal path left [0, 1]");
  }
  return next;
}

ScalarPath simulate_marginal_1d(const OneDimWf& od, double z0, double t_max,
                                const SdeConfig& config, std::uint64_t seed) {
  validate(od);
  check_config(config);
  require(z0 >= 0.0 && z0 <= 1.0, ErrorCode::kOutOfInterval, "z0 must lie in [0, 1]");
  require(t_max >= 0.0, ErrorCode::kInvalidArgument, "t_max must be >= 0");
  const std::uint64_t steps = step_count(t_max, config.dt);
  ScalarPath path;
  path.seed = seed;
  path.t.reserve(steps + 1);
  path.z.reserve(steps + 1);
  Rng rng(seed);
  double z = z0;
  path.t.push_back(0.0);
  path.z.push_back(z);
  for (std::uint64_t s = 1; s <= steps; ++s) {
    const double t_prev = static_cast<double>(s - 1) * config.dt;
    const double t_next = s == steps ? t_max : static_cast<double>(s) * config.dt;
    z = em_step_1d(z, od, config, t_next - t_prev, rng.normal());
    path.t.push_back(t_next);
    path.z.push_back(z);
  }
  return path;
}

std::vector<Vector> sample_wf_at(const WfParams& params, std::span<const double> x0,
                                 std::span<const double> times, const SdeConfig& config,
                                 std::uint64_t seed) {
  validate(params);
  check_config(config);
  validate_simplex(x0, 1e-10, "x0");
  require(x0.size() == params.k(), ErrorCode::kDimensionMismatch, "x0 and p differ in length");
  Rng rng(seed);
  Vector x(x0.begin(), x0.end());
  Vector z(x.size());
  std::vector<Vector> out;
  out.reserve(times.size());
  std::uint64_t done = 0;
  for (double t : times) {
    const std::uint64_t target = static_cast<std::uint64_t>(std::llround(t / config.dt));
    require(target >= done, ErrorCode::kInvalidArgument, "sample times must be ascending");
    for (; done < target; ++done) {
      for (double& v : z) v = rng.normal();
      x = em_step_dt(x, params, config.dt, config, z);
    }
    out.push_back(x);
  }
  return out;
}

double sample_marginal_1d_at(const OneDimWf& od, double z0, double t,
                             const SdeConfig& config, std::uint64_t seed) {
  validate(od);
  check_config(config);
  Rng rng(seed);
  const auto steps = static_cast<std::uint64_t>(std::llround(t / config.dt));
  double z = z0;
  for (std::uint64_t s = 0; s < steps; ++s) z = em_step_1d(z, od, config, config.dt, rng.normal());
  return z;
}

namespace {

// Probability that a Brownian bridge between z_from and z_to (both on the
// same side of `level`) with variance rate var*dt crosses `level`.
double bridge_cross_probability(double z_from, double z_to, double level, double var,
                                double dt) {
  if (!(var > 0.0)) return 0.0;
  return std::exp(-2.0 * (level - z_from) * (level - z_to) / (var * dt));
}

}  // namespace

ExitResult simulate_exit_1d(const OneDimWf& od, double lower, double upper, double z0,
                            const SdeConfig& config, std::uint64_t seed, double t_cap) {
  validate(od);
  check_config(config);
  require(lower < upper, ErrorCode::kInvalidArgument, "need lower < upper");
  require(z0 >= lower && z0 <= upper, ErrorCode::kOutOfInterval, "z0 outside the interval");
  if (z0 <= lower) return {false, 0.0};
  if (z0 >= upper) return {true, 0.0};
  Rng rng(seed);
  const double dt = config.dt;
  double z = z0;
  double t = 0.0;
  while (t < t_cap) {
    const double var = std::max(0.0, z * (1.0 - z));
    const double next = em_step_1d(z, od, config, dt, rng.normal());
    t += dt;
    if (next >= upper) return {true, t};
    if (next <= lower) return {false, t};
    // Only consult the bridge when a crossing is plausible.
    const double reach = 8.0 * std::sqrt(var * dt);
    if (upper - std::max(z, next) < reach &&
        rng.uniform() < bridge_cross_probability(z, next, upper, var, dt)) {
      return {true, t};
    }
    if (std::min(z, next) - lower < reach &&
        rng.uniform() < bridge_cross_probability(z, next, lower, var, dt)) {
      return {false, t};
    }
    z = next;
  }
  fail(ErrorCode::kDomain, "exit not reached before the time cap");
}

bool touches_zero_neighborhood(const OneDimWf& od, double z0, double delta,
                               double horizon, const SdeConfig& config,
                               std::uint64_t seed) {
  validate(od);
  check_config(config);
  Rng rng(seed);
  const std::uint64_t steps = step_count(horizon, config.dt);
  double z = z0;
  if (z <= delta) return true;
  for (std::uint64_t s = 0; s < steps; ++s) {
    z = em_step_1d(z, od, config, config.dt, rng.normal());
    if (z <= delta) return true;
  }
  return false;
}

}  // namespace rpwf
