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
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "core/simplex.hpp"
#include "core/urn.hpp"
#include "core/wf_sde.hpp"

namespace rpwf {

struct ChiSqReport {
  std::uint64_t N = 0;
  std::vector<std::uint64_t> counts;
  Vector p;
  double statistic = 0.0;
};

// N sum_i (O_i / N - p_i)^2 / p_i
double chi_squared_stat(std::span<const std::uint64_t> counts, std::span<const double> p,
                        std::uint64_t N);
ChiSqReport chi_squared(std::span<const std::uint64_t> counts, std::span<const double> p);
// Color counts of a draw sequence.
std::vector<std::uint64_t> color_counts(std::span<const DrawOutcome> draws, std::size_t k);

// Row N-1 holds the mean of the first N draws as indicator vectors.
SimplexSeries empirical_mean(std::span<const DrawOutcome> draws, std::size_t k);

// Asymptotic Kolmogorov quantile: sqrt(-ln(level / 2) / 2).
double kolmogorov_quantile(double level);

struct KsReport {
  double D = 0.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;  // 0 for the one-sample test
  double critical_1 = 0.0;
  double critical_5 = 0.0;
};

using Cdf = std::function<double(double)>;

KsReport ks_one_sample(std::vector<double> samples, const Cdf& cdf);
KsReport ks_two_sample(std::vector<double> s1, std::vector<double> s2);

struct ConvergenceConfig {
  WfParams wf;             // b_scalar, alpha, p shared by every urn and the limit
  Vector x0;               // start; empty means p
  std::vector<double> betas;
  std::vector<double> checkpoints;  // rescaled times t, ascending
  std::size_t replicas = 2000;      // urn replicas per beta
  std::size_t wf_paths = 0;         // 0 means same as replicas
  SdeConfig sde;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::uint64_t max_steps = 1'000'000'000;  // per replica
};

struct MarginalComparison {
  std::vector<std::size_t> group;  // colors summed into the marginal
  KsReport ks;
  double urn_mean = 0.0;
  double wf_mean = 0.0;
  double mean_z = 0.0;  // (urn_mean - wf_mean) / standard error
  double urn_var = 0.0;
  double wf_var = 0.0;
};

struct CheckpointComparison {
  double t = 0.0;
  std::uint64_t urn_step = 0;
  std::vector<MarginalComparison> marginals;
};

struct BetaComparison {
  double beta = 0.0;
  std::vector<CheckpointComparison> checkpoints;
  double mean_D = 0.0;  // average over checkpoints and marginals
};

struct ConvergenceReport {
  ConvergenceConfig config;
  std::vector<std::vector<std::size_t>> groups;
  std::vector<BetaComparison> per_beta;
  // mean_D at the largest beta is no larger than at the smallest.
  bool trend_non_increasing = false;
  // urn_samples[beta][checkpoint][replica], wf_samples[checkpoint][path]
  std::vector<std::vector<std::vector<Vector>>> urn_samples;
  std::vector<std::vector<Vector>> wf_samples;
};

// Urn steps needed for every (beta, checkpoint); throws kUnsupportedRange
// when a count exceeds config.max_steps.
std::vector<std::vector<std::uint64_t>> convergence_step_plan(const ConvergenceConfig& config);

ConvergenceReport convergence_experiment(const ConvergenceConfig& config);

struct StationaryConfig {
  WfParams wf;
  double beta = 0.99;
  double t = 10.0;  // rescaled time of the sample
  std::size_t color = 0;
  std::size_t replicas = 1000;
  Vector x0;  // empty means p
  std::uint64_t seed = 0;
  unsigned workers = 0;
};

struct StationaryReport {
  StationaryConfig config;
  OneDimWf marginal;
  std::uint64_t urn_step = 0;
  KsReport ks;
  std::vector<double> samples;
};

// Urn psi_color at a large rescaled time against Beta(2 a0, 2 a1).
StationaryReport stationary_experiment(const StationaryConfig& config);

// Independent urn replicas of psi at the given steps: out[replica][step].
std::vector<std::vector<Vector>> urn_ensemble(const UrnParams& params,
                                              std::span<const std::uint64_t> at_steps,
                                              std::size_t replicas, std::uint64_t seed,
                                              std::string_view label, unsigned workers);

}  // namespace rpwf
