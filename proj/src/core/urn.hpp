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
#include <cstdint>
#include <span>
#include <vector>

#include "core/rng.hpp"
#include "core/simplex.hpp"

namespace rpwf {

// Rescaled Polya urn: N_n = b + B_n, B_{n+1} = beta * B_n + alpha * xi_{n+1}.
// Ball counts are real numbers.
struct UrnParams {
  double alpha = 1.0;
  double beta = 1.0;
  Vector b;   // fixed part, b_i >= 0, |b| > 0
  Vector B0;  // initial variable part, b_i + B0_i > 0

  std::size_t k() const { return b.size(); }
  double b_total() const;
  double B0_total() const;
  // p = b / |b|
  Vector p() const;
};

// Throws rpwf::Error with a code specific to the violated condition.
void validate(const UrnParams& params);

struct UrnState {
  std::uint64_t n = 0;
  Vector B;
  double r_star = 0.0;  // |b| + sum_i B_i
};

// Color index, 0-based. Exported files use 1-based colors.
struct DrawOutcome {
  std::size_t color = 0;
};

struct IncrementDecomposition {
  double eps = 0.0;    // |b| (1 - beta) / r*_{n+1}
  double delta = 0.0;  // alpha / r*_{n+1}
  Vector deltaM;       // xi_{n+1} - psi_n
};

struct UrnTrajectory {
  UrnParams params;
  std::uint64_t seed = 0;
  std::vector<DrawOutcome> draws;
  SimplexSeries psi;  // psi_0 .. psi_n, one column per color
};

UrnState new_urn(const UrnParams& params);

Vector predictive_mean(const UrnParams& params, const UrnState& state);

// Inverse-CDF categorical draw with a fixed left-to-right color order.
std::size_t sample_color(std::span<const double> probabilities, double u);

// Deterministic update given the drawn color.
UrnState advance(const UrnParams& params, const UrnState& state,
                 DrawOutcome draw);

struct StepResult {
  UrnState state;
  DrawOutcome draw;
};

StepResult step(const UrnParams& params, const UrnState& state, Rng& rng);

// B_n from the closed form beta^n B0 + sum_h alpha beta^(n-h) xi_h, with the
// powers taken forward so nothing overflows for small beta.
Vector closed_form_B(const UrnParams& params,
                     std::span<const DrawOutcome> draws, std::uint64_t n);

// psi_n from the closed-form numerator over total_balls(n).
Vector closed_form_psi(const UrnParams& params,
                       std::span<const DrawOutcome> draws, std::uint64_t n);

double total_balls(const UrnParams& params, std::uint64_t n);

IncrementDecomposition increment_decomposition(const UrnParams& params,
                                               const UrnState& state,
                                               DrawOutcome draw);

UrnTrajectory simulate_urn(const UrnParams& params, std::uint64_t steps,
                           std::uint64_t seed);

// Replays a fixed draw sequence through the state recursion.
UrnTrajectory replay_urn(const UrnParams& params,
                         std::span<const DrawOutcome> draws);

// Runs the urn without storing the path and returns psi at each requested
// step index (ascending).
std::vector<Vector> sample_urn_psi(const UrnParams& params,
                                   std::span<const std::uint64_t> at_steps,
                                   std::uint64_t seed);

}  // namespace rpwf
