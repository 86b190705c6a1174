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

#include "core/urn.hpp"

#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace rpwf {

double UrnParams::b_total() const { return simplex_sum(b); }

double UrnParams::B0_total() const { return simplex_sum(B0); }

Vector UrnParams::p() const {
  const double total = b_total();
  Vector out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = b[i] / total;
  return out;
}

void validate(const UrnParams& params) {
  if (!(params.alpha > 0.0) || !std::isfinite(params.alpha)) {
    fail(ErrorCode::kNonPositiveAlpha, "alpha must be > 0");
  }
  if (!(params.beta >= 0.0 && params.beta <= 1.0)) {
    fail(ErrorCode::kBetaOutOfRange, "beta must lie in [0, 1]");
  }
  if (params.b.size() < 2) {
    fail(ErrorCode::kDimensionMismatch, "the urn needs k >= 2 colors");
  }
  if (params.B0.size() != params.b.size()) {
    fail(ErrorCode::kDimensionMismatch, "b and B0 must have the same length");
  }
  for (std::size_t i = 0; i < params.k(); ++i) {
    if (!(params.b[i] >= 0.0) || !std::isfinite(params.b[i])) {
      std::ostringstream os;
      os << "b_" << i + 1 << " must be >= 0";
      fail(ErrorCode::kInvalidArgument, os.str());
    }
  }
  if (!(params.b_total() > 0.0)) {
    fail(ErrorCode::kZeroFixedTotal, "|b| must be > 0");
  }
  for (std::size_t i = 0; i < params.k(); ++i) {
    if (!(params.b[i] + params.B0[i] > 0.0)) {
      std::ostringstream os;
      os << "b_" << i + 1 << " + B0_" << i + 1 << " must be > 0";
      fail(ErrorCode::kNonPositiveInitialBalls, os.str());
    }
  }
}

UrnState new_urn(const UrnParams& params) {
  validate(params);
  UrnState state;
  state.n = 0;
  state.B = params.B0;
  state.r_star = params.b_total() + params.B0_total();
  return state;
}

Vector predictive_mean(const UrnParams& params, const UrnState& state) {
  Vector psi(params.k());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    psi[i] = (params.b[i] + state.B[i]) / state.r_star;
  }
  return psi;
}

std::size_t sample_color(std::span<const double> probabilities, double u) {
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] > 0.0) last_positive = i;
    cumulative += probabilities[i];
    if (u < cumulative) return i;
  }
  // Rounding left the cumulative sum a hair below 1.
  return last_positive;
}

UrnState advance(const UrnParams& params, const UrnState& state,
                 DrawOutcome draw) {
  UrnState next;
  next.n = state.n + 1;
  next.B.resize(state.B.size());
  const double B_total = simplex_sum(state.B);
  for (std::size_t i = 0; i < state.B.size(); ++i) {
    next.B[i] = params.beta * state.B[i];
  }
  next.B[draw.color] += params.alpha;
  next.r_star = state.r_star + (params.beta - 1.0) * B_total + params.alpha;
  return next;
}

StepResult step(const UrnParams& params, const UrnState& state, Rng& rng) {
  const Vector psi = predictive_mean(params, state);
  const DrawOutcome draw{sample_color(psi, rng.uniform())};
  return {advance(params, state, draw), draw};
}

Vector closed_form_B(const UrnParams& params,
                     std::span<const DrawOutcome> draws, std::uint64_t n) {
  require(n <= draws.size(), ErrorCode::kInvalidArgument,
          "closed_form_B: n exceeds the number of draws");
  const double beta = params.beta;
  const double scale = std::pow(beta, static_cast<double>(n));
  Vector B(params.k());
  for (std::size_t i = 0; i < B.size(); ++i) B[i] = scale * params.B0[i];
  for (std::uint64_t h = 1; h <= n; ++h) {
    B[draws[h - 1].color] += params.alpha * std::pow(beta, static_cast<double>(n - h));
  }
  return B;
}

double total_balls(const UrnParams& params, std::uint64_t n) {
  const double nn = static_cast<double>(n);
  if (params.beta == 1.0) {
    return params.b_total() + params.B0_total() + nn * params.alpha;
  }
  const double limit = params.alpha / (1.0 - params.beta);
  return params.b_total() + limit +
         std::pow(params.beta, nn) * (params.B0_total() - limit);
}

Vector closed_form_psi(const UrnParams& params,
                       std::span<const DrawOutcome> draws, std::uint64_t n) {
  Vector numerator = closed_form_B(params, draws, n);
  const double denominator = total_balls(params, n);
  for (std::size_t i = 0; i < numerator.size(); ++i) {
    numerator[i] = (params.b[i] + numerator[i]) / denominator;
  }
  return numerator;
}

IncrementDecomposition increment_decomposition(const UrnParams& params,
                                               const UrnState& state,
                                               DrawOutcome draw) {
  const double r_next = state.r_star + (params.beta - 1.0) * simplex_sum(state.B) +
                        params.alpha;
  IncrementDecomposition out;
  out.eps = params.b_total() * (1.0 - params.beta) / r_next;
  out.delta = params.alpha / r_next;
  out.deltaM = predictive_mean(params, state);
  for (double& v : out.deltaM) v = -v;
  out.deltaM[draw.color] += 1.0;
  return out;
}

UrnTrajectory simulate_urn(const UrnParams& params, std::uint64_t steps,
                           std::uint64_t seed) {
  UrnTrajectory traj;
  traj.params = params;
  traj.seed = seed;
  traj.psi = SimplexSeries(params.k());
  traj.psi.reserve(steps + 1);
  traj.draws.reserve(steps);
  UrnState state = new_urn(params);
  Rng rng(seed);
  traj.psi.push_back(predictive_mean(params, state));
  for (std::uint64_t s = 0; s < steps; ++s) {
    auto [next, draw] = step(params, state, rng);
    traj.draws.push_back(draw);
    state = std::move(next);
    traj.psi.push_back(predictive_mean(params, state));
  }
  return traj;
}

UrnTrajectory replay_urn(const UrnParams& params,
                         std::span<const DrawOutcome> draws) {
  UrnTrajectory traj;
  traj.params = params;
  traj.psi = SimplexSeries(params.k());
  traj.psi.reserve(draws.size() + 1);
  UrnState state = new_urn(params);
  traj.psi.push_back(predictive_mean(params, state));
  for (const DrawOutcome& d : draws) {
    require(d.color < params.k(), ErrorCode::kInvalidArgument, "draw color out of range");
    state = advance(params, state, d);
    traj.draws.push_back(d);
    traj.psi.push_back(predictive_mean(params, state));
  }
  return traj;
}

std::vector<Vector> sample_urn_psi(const UrnParams& params,
                                   std::span<const std::uint64_t> at_steps,
                                   std::uint64_t seed) {
  UrnState state = new_urn(params);
  Rng rng(seed);
  const std::size_t k = params.k();
  Vector psi = predictive_mean(params, state);
  std::vector<Vector> out;
  out.reserve(at_steps.size());
  std::uint64_t n = 0;
  for (std::uint64_t target : at_steps) {
    require(target >= n, ErrorCode::kInvalidArgument, "sample steps must be ascending");
    // Hot loop: same arithmetic as step()/advance(), without allocation.
    while (n < target) {
      const std::size_t color = sample_color(psi, rng.uniform());
      double B_total = 0.0;
      for (std::size_t i = 0; i < k; ++i) B_total += state.B[i];
      for (std::size_t i = 0; i < k; ++i) state.B[i] *= params.beta;
      state.B[color] += params.alpha;
      state.r_star = state.r_star + (params.beta - 1.0) * B_total + params.alpha;
      for (std::size_t i = 0; i < k; ++i) psi[i] = (params.b[i] + state.B[i]) / state.r_star;
      ++n;
    }
    out.push_back(psi);
  }
  return out;
}

}  // namespace rpwf
