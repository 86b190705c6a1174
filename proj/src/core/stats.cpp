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

#include "core/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include <boost/math/distributions/beta.hpp>

#include "core/boundary.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/scaling.hpp"

namespace rpwf {

double chi_squared_stat(std::span<const std::uint64_t> counts, std::span<const double> p,
                        std::uint64_t N) {
  require(counts.size() == p.size(), ErrorCode::kDimensionMismatch,
          "counts and p must have the same length");
  require(N > 0, ErrorCode::kInvalidArgument, "N must be > 0");
  const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  require(total == N, ErrorCode::kInvalidArgument, "counts must sum to N");
  const double n = static_cast<double>(N);
  double stat = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    require(p[i] > 0.0 && std::isfinite(p[i]), ErrorCode::kInvalidArgument,
            "p entries must be > 0");
    const double diff = static_cast<double>(counts[i]) / n - p[i];
    stat += diff * diff / p[i];
  }
  return n * stat;
}

ChiSqReport chi_squared(std::span<const std::uint64_t> counts, std::span<const double> p) {
  ChiSqReport r;
  r.N = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  r.counts.assign(counts.begin(), counts.end());
  r.p.assign(p.begin(), p.end());
  r.statistic = chi_squared_stat(counts, p, r.N);
  return r;
}

std::vector<std::uint64_t> color_counts(std::span<const DrawOutcome> draws, std::size_t k) {
  std::vector<std::uint64_t> out(k, 0);
  for (const DrawOutcome& d : draws) {
    require(d.color < k, ErrorCode::kInvalidArgument, "draw color out of range");
    ++out[d.color];
  }
  return out;
}

SimplexSeries empirical_mean(std::span<const DrawOutcome> draws, std::size_t k) {
  require(!draws.empty(), ErrorCode::kInvalidArgument, "need at least one draw");
  SimplexSeries out(k);
  out.reserve(draws.size());
  std::vector<std::uint64_t> counts(k, 0);
  Vector row(k);
  for (std::size_t n = 0; n < draws.size(); ++n) {
    require(draws[n].color < k, ErrorCode::kInvalidArgument, "draw color out of range");
    ++counts[draws[n].color];
    const double denom = static_cast<double>(n + 1);
    for (std::size_t i = 0; i < k; ++i) row[i] = static_cast<double>(counts[i]) / denom;
    out.push_back(row);
  }
  return out;
}

double kolmogorov_quantile(double level) {
  require(level > 0.0 && level < 1.0, ErrorCode::kInvalidArgument, "level must lie in (0, 1)");
  return std::sqrt(-0.5 * std::log(level / 2.0));
}

KsReport ks_one_sample(std::vector<double> samples, const Cdf& cdf) {
  require(!samples.empty(), ErrorCode::kInvalidArgument, "need at least one sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double D = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    D = std::max({D, static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n});
  }
  KsReport r;
  r.D = std::clamp(D, 0.0, 1.0);
  r.n1 = samples.size();
  const double scale = 1.0 / std::sqrt(n);
  r.critical_1 = kolmogorov_quantile(0.01) * scale;
  r.critical_5 = kolmogorov_quantile(0.05) * scale;
  return r;
}

KsReport ks_two_sample(std::vector<double> s1, std::vector<double> s2) {
  require(!s1.empty() && !s2.empty(), ErrorCode::kInvalidArgument, "need nonempty samples");
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  const double n1 = static_cast<double>(s1.size());
  const double n2 = static_cast<double>(s2.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double D = 0.0;
  while (i < s1.size() && j < s2.size()) {
    const double x = std::min(s1[i], s2[j]);
    while (i < s1.size() && s1[i] == x) ++i;
    while (j < s2.size() && s2[j] == x) ++j;
    D = std::max(D, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }
  KsReport r;
  r.D = D;
  r.n1 = s1.size();
  r.n2 = s2.size();
  const double scale = std::sqrt((n1 + n2) / (n1 * n2));
  r.critical_1 = kolmogorov_quantile(0.01) * scale;
  r.critical_5 = kolmogorov_quantile(0.05) * scale;
  return r;
}

std::vector<std::vector<Vector>> urn_ensemble(const UrnParams& params,
                                              std::span<const std::uint64_t> at_steps,
                                              std::size_t replicas, std::uint64_t seed,
                                              std::string_view label, unsigned workers) {
  validate(params);
  std::vector<std::vector<Vector>> out(replicas);
  parallel_for(replicas, workers, [&](std::size_t r) {
    out[r] = sample_urn_psi(params, at_steps, derive_seed(seed, label, r));
  });
  return out;
}

namespace {

Vector start_point(const WfParams& wf, const Vector& x0) {
  Vector x = x0.empty() ? wf.p : x0;
  require(x.size() == wf.k(), ErrorCode::kDimensionMismatch, "x0 must have k entries");
  validate_simplex(x, 1e-9, "x0");
  return x;
}

std::vector<std::vector<std::size_t>> comparison_groups(std::size_t k, std::uint64_t seed) {
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < k; ++i) groups.push_back({i});
  if (k >= 3) {
    // Random bipartition with both sides of size >= 2 when possible.
    Rng rng(derive_seed(seed, "convergence.partition", 0));
    std::vector<std::size_t> colors(k);
    std::iota(colors.begin(), colors.end(), std::size_t{0});
    for (std::size_t i = k - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1));
      std::swap(colors[i], colors[std::min(j, i)]);
    }
    const std::size_t lo = k >= 4 ? 2 : 1;
    const std::size_t span = k - 2 * lo + 1;
    const std::size_t size =
        lo + std::min(span - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(span)));
    std::vector<std::size_t> group(colors.begin(), colors.begin() + static_cast<std::ptrdiff_t>(size));
    std::sort(group.begin(), group.end());
    groups.push_back(group);
  }
  return groups;
}

std::vector<double> marginal_values(const std::vector<Vector>& xs,
                                    const std::vector<std::size_t>& group) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const Vector& x : xs) {
    double s = 0.0;
    for (std::size_t c : group) s += x[c];
    out.push_back(s);
  }
  return out;
}

void mean_var(const std::vector<double>& v, double& mean, double& var) {
  const double n = static_cast<double>(v.size());
  mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  var = v.size() > 1 ? ss / (n - 1.0) : 0.0;
}

UrnParams family_member(const WfParams& wf, double beta, const Vector& x0) {
  ScaledFamilyParams fp;
  fp.alpha = wf.alpha;
  fp.b.resize(wf.k());
  for (std::size_t i = 0; i < wf.k(); ++i) fp.b[i] = wf.b_scalar * wf.p[i];
  fp.beta = beta;
  fp.B0_direction = x0;
  return build_family_member(fp);
}

std::string beta_label(std::string_view prefix, std::size_t index) {
  return std::string(prefix) + "." + std::to_string(index);
}

}  // namespace

std::vector<std::vector<std::uint64_t>> convergence_step_plan(const ConvergenceConfig& config) {
  require(!config.betas.empty(), ErrorCode::kInvalidArgument, "need at least one beta");
  require(!config.checkpoints.empty(), ErrorCode::kInvalidArgument,
          "need at least one checkpoint time");
  for (std::size_t i = 0; i < config.checkpoints.size(); ++i) {
    const double t = config.checkpoints[i];
    require(std::isfinite(t) && t > 0.0, ErrorCode::kInvalidArgument,
            "checkpoint times must be > 0");
    require(i == 0 || t > config.checkpoints[i - 1], ErrorCode::kInvalidArgument,
            "checkpoint times must be strictly increasing");
  }
  std::vector<std::vector<std::uint64_t>> plan;
  for (double beta : config.betas) {
    require(beta >= 0.0 && beta < 1.0, ErrorCode::kBetaOutOfRange, "beta must lie in [0, 1)");
    std::vector<std::uint64_t> steps;
    for (double t : config.checkpoints) {
      const double needed = t / rescaled_step(beta);
      if (!(needed <= static_cast<double>(config.max_steps))) {
        std::ostringstream os;
        os << "beta = " << beta << " needs about " << needed << " urn steps to reach t = " << t
           << " (limit " << config.max_steps << ")";
        fail(ErrorCode::kUnsupportedRange, os.str());
      }
      steps.push_back(rescaled_index(t, beta));
    }
    plan.push_back(std::move(steps));
  }
  return plan;
}

ConvergenceReport convergence_experiment(const ConvergenceConfig& config) {
  validate(config.wf);
  require(config.replicas >= 1, ErrorCode::kInvalidArgument, "replicas must be >= 1");
  const std::vector<std::vector<std::uint64_t>> plan = convergence_step_plan(config);
  const Vector x0 = start_point(config.wf, config.x0);
  const std::size_t wf_paths = config.wf_paths == 0 ? config.replicas : config.wf_paths;

  ConvergenceReport report;
  report.config = config;
  report.groups = comparison_groups(config.wf.k(), config.seed);

  // Limit ensemble, shared by every beta.
  const std::size_t nc = config.checkpoints.size();
  std::vector<std::vector<Vector>> wf_by_path(wf_paths);
  parallel_for(wf_paths, config.workers, [&](std::size_t r) {
    wf_by_path[r] = sample_wf_at(config.wf, x0, config.checkpoints, config.sde,
                                 derive_seed(config.seed, "convergence.wf", r));
  });
  report.wf_samples.assign(nc, {});
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t r = 0; r < wf_paths; ++r) report.wf_samples[c].push_back(wf_by_path[r][c]);
  }

  for (std::size_t bi = 0; bi < config.betas.size(); ++bi) {
    const double beta = config.betas[bi];
    const UrnParams params = family_member(config.wf, beta, x0);
    // Checkpoints may share a step index at small beta; sample_urn_psi needs
    // ascending steps, which rescaled_index preserves.
    const auto ensemble = urn_ensemble(params, plan[bi], config.replicas, config.seed,
                                       beta_label("convergence.urn", bi), config.workers);
    std::vector<std::vector<Vector>> by_checkpoint(nc);
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t r = 0; r < config.replicas; ++r) by_checkpoint[c].push_back(ensemble[r][c]);
    }

    BetaComparison bc;
    bc.beta = beta;
    double d_sum = 0.0;
    std::size_t d_count = 0;
    for (std::size_t c = 0; c < nc; ++c) {
      CheckpointComparison cc;
      cc.t = config.checkpoints[c];
      cc.urn_step = plan[bi][c];
      for (const auto& group : report.groups) {
        MarginalComparison mc;
        mc.group = group;
        const std::vector<double> u = marginal_values(by_checkpoint[c], group);
        const std::vector<double> w = marginal_values(report.wf_samples[c], group);
        mc.ks = ks_two_sample(u, w);
        mean_var(u, mc.urn_mean, mc.urn_var);
        mean_var(w, mc.wf_mean, mc.wf_var);
        const double se = std::sqrt(mc.urn_var / static_cast<double>(u.size()) +
                                    mc.wf_var / static_cast<double>(w.size()));
        mc.mean_z = se > 0.0 ? (mc.urn_mean - mc.wf_mean) / se : 0.0;
        d_sum += mc.ks.D;
        ++d_count;
        cc.marginals.push_back(std::move(mc));
      }
      bc.checkpoints.push_back(std::move(cc));
    }
    bc.mean_D = d_sum / static_cast<double>(d_count);
    report.per_beta.push_back(std::move(bc));
    report.urn_samples.push_back(std::move(by_checkpoint));
  }

  const auto [lo, hi] = std::minmax_element(
      report.per_beta.begin(), report.per_beta.end(),
      [](const BetaComparison& a, const BetaComparison& b) { return a.beta < b.beta; });
  report.trend_non_increasing = hi->mean_D <= lo->mean_D;
  return report;
}

StationaryReport stationary_experiment(const StationaryConfig& config) {
  validate(config.wf);
  require(config.color < config.wf.k(), ErrorCode::kInvalidArgument, "color out of range");
  require(config.replicas >= 1, ErrorCode::kInvalidArgument, "replicas must be >= 1");
  require(std::isfinite(config.t) && config.t > 0.0, ErrorCode::kInvalidArgument, "t must be > 0");
  require(config.beta >= 0.0 && config.beta < 1.0, ErrorCode::kBetaOutOfRange,
          "beta must lie in [0, 1)");

  StationaryReport report;
  report.config = config;
  report.marginal = group_to_1d(config.wf, {config.color});
  require(report.marginal.a0 > 0.0 && report.marginal.a1 > 0.0, ErrorCode::kInvalidArgument,
          "stationary marginal needs 0 < p_color < 1");
  const Vector x0 = start_point(config.wf, config.x0);
  const UrnParams params = family_member(config.wf, config.beta, x0);
  report.urn_step = rescaled_index(config.t, config.beta);
  const std::uint64_t steps[] = {report.urn_step};
  const auto ensemble =
      urn_ensemble(params, steps, config.replicas, config.seed, "stationary.urn", config.workers);
  for (const auto& replica : ensemble) report.samples.push_back(replica[0][config.color]);

  const boost::math::beta_distribution<double> limit(2.0 * report.marginal.a0,
                                                     2.0 * report.marginal.a1);
  report.ks = ks_one_sample(report.samples, [&](double x) {
    return boost::math::cdf(limit, std::clamp(x, 0.0, 1.0));
  });
  return report;
}

}  // namespace rpwf
