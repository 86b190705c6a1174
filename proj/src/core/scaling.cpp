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

#include "core/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace rpwf {

namespace {

// Relative slack for floor/ceil of t/(1-beta)^2.
constexpr double kIndexSlack = 1e-9;

void check_family_beta(double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) {
    fail(ErrorCode::kBetaOutOfRange, "the scaling family needs 0 <= beta < 1");
  }
}

}  // namespace

EpsDelta eps_delta(double alpha, double b_scalar, double beta) {
  check_family_beta(beta);
  require(alpha > 0.0, ErrorCode::kNonPositiveAlpha, "alpha must be > 0");
  require(b_scalar > 0.0, ErrorCode::kZeroFixedTotal, "|b| must be > 0");
  const double one_minus = 1.0 - beta;
  const double denom = alpha + b_scalar * one_minus;
  return {b_scalar * one_minus * one_minus / denom, alpha * one_minus / denom};
}

UrnParams build_family_member(const ScaledFamilyParams& fp) {
  check_family_beta(fp.beta);
  require(fp.alpha > 0.0, ErrorCode::kNonPositiveAlpha, "alpha must be > 0");
  UrnParams params;
  params.alpha = fp.alpha;
  params.beta = fp.beta;
  params.b = fp.b;
  const double b_total = simplex_sum(fp.b);
  require(b_total > 0.0, ErrorCode::kZeroFixedTotal, "|b| must be > 0");
  Vector direction;
  if (fp.B0_direction) {
    direction = *fp.B0_direction;
    require(direction.size() == fp.b.size(), ErrorCode::kDimensionMismatch,
            "B0 direction must have k components");
    validate_simplex(direction, 1e-10, "B0 direction");
  } else {
    direction = params.p();
  }
  const double r = fp.alpha / (1.0 - fp.beta);
  params.B0.resize(direction.size());
  for (std::size_t i = 0; i < direction.size(); ++i) params.B0[i] = r * direction[i];
  validate(params);
  return params;
}

double rescaled_step(double beta) {
  check_family_beta(beta);
  return (1.0 - beta) * (1.0 - beta);
}

std::uint64_t rescaled_index(double t, double beta) {
  require(t >= 0.0, ErrorCode::kInvalidArgument, "time must be >= 0");
  const double q = t / rescaled_step(beta);
  double idx = std::floor(q);
  if ((idx + 1.0) - q <= kIndexSlack * std::max(1.0, q)) idx += 1.0;
  return static_cast<std::uint64_t>(idx);
}

std::uint64_t required_steps(double t_max, double beta) {
  require(t_max >= 0.0, ErrorCode::kInvalidArgument, "t_max must be >= 0");
  const double q = t_max / rescaled_step(beta);
  double idx = std::ceil(q);
  if (q - (idx - 1.0) <= kIndexSlack * std::max(1.0, q)) idx -= 1.0;
  return static_cast<std::uint64_t>(idx);
}

RescaledPath rescale_time(const UrnTrajectory& traj, double beta, double t_max,
                          double dt_out) {
  require(dt_out > 0.0, ErrorCode::kInvalidArgument, "dt_out must be > 0");
  require(t_max >= 0.0, ErrorCode::kInvalidArgument, "t_max must be >= 0");
  const std::uint64_t needed = required_steps(t_max, beta);
  const std::uint64_t have = traj.draws.size();
  if (have < needed) {
    std::ostringstream os;
    os << "trajectory has " << have << " steps; rescaled time " << t_max
       << " at beta " << beta << " requires " << needed << " steps";
    fail(ErrorCode::kTrajectoryTooShort, os.str());
  }
  RescaledPath path;
  path.beta = beta;
  path.X = SimplexSeries(traj.psi.dim());
  const auto points = static_cast<std::uint64_t>(std::floor(t_max / dt_out + kIndexSlack)) + 1;
  path.t_grid.reserve(points);
  path.X.reserve(points);
  for (std::uint64_t j = 0; j < points; ++j) {
    const double t = static_cast<double>(j) * dt_out;
    const std::uint64_t idx = std::min<std::uint64_t>(rescaled_index(t, beta), have);
    path.t_grid.push_back(t);
    path.X.push_back(traj.psi.row(idx));
  }
  return path;
}

Partition::Partition(std::vector<std::vector<std::size_t>> groups, std::size_t k)
    : groups_(std::move(groups)), group_of_(k, k) {
  if (groups_.empty()) fail(ErrorCode::kNotAPartition, "partition has no groups");
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (groups_[g].empty()) fail(ErrorCode::kNotAPartition, "partition group is empty");
    for (std::size_t color : groups_[g]) {
      if (color >= k) fail(ErrorCode::kNotAPartition, "partition index out of range");
      if (group_of_[color] != k) {
        fail(ErrorCode::kNotAPartition, "partition groups overlap");
      }
      group_of_[color] = g;
    }
  }
  for (std::size_t color = 0; color < k; ++color) {
    if (group_of_[color] == k) {
      fail(ErrorCode::kNotAPartition, "partition does not cover every color");
    }
  }
}

Partition Partition::identity(std::size_t k) {
  std::vector<std::vector<std::size_t>> groups(k);
  for (std::size_t i = 0; i < k; ++i) groups[i] = {i};
  return Partition(std::move(groups), k);
}

Vector Partition::project(std::span<const double> x) const {
  require(x.size() == k(), ErrorCode::kDimensionMismatch, "partition dimension mismatch");
  Vector out(groups_.size(), 0.0);
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    for (std::size_t color : groups_[g]) out[g] += x[color];
  }
  return out;
}

SimplexSeries project_group(const SimplexSeries& series, const Partition& partition) {
  require(series.dim() == partition.k(), ErrorCode::kDimensionMismatch,
          "partition dimension mismatch");
  SimplexSeries out(partition.size());
  out.reserve(series.size());
  Vector row(partition.size());
  for (std::size_t n = 0; n < series.size(); ++n) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t c = 0; c < series.dim(); ++c) row[partition.group_of(c)] += series.at(n, c);
    out.push_back(row);
  }
  return out;
}

UrnTrajectory project_group(const UrnTrajectory& traj, const Partition& partition) {
  UrnTrajectory out;
  out.seed = traj.seed;
  out.params.alpha = traj.params.alpha;
  out.params.beta = traj.params.beta;
  out.params.b = partition.project(traj.params.b);
  out.params.B0 = partition.project(traj.params.B0);
  out.draws.reserve(traj.draws.size());
  for (const DrawOutcome& d : traj.draws) out.draws.push_back({partition.group_of(d.color)});
  out.psi = project_group(traj.psi, partition);
  return out;
}

RescaledPath project_group(const RescaledPath& path, const Partition& partition) {
  RescaledPath out;
  out.beta = path.beta;
  out.t_grid = path.t_grid;
  out.X = project_group(path.X, partition);
  return out;
}

}  // namespace rpwf
