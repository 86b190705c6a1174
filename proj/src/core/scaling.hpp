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
#include <optional>
#include <vector>

#include "core/simplex.hpp"
#include "core/urn.hpp"

namespace rpwf {

struct EpsDelta {
  double eps = 0.0;
  double delta = 0.0;
};

// eps(beta) = b (1-beta)^2 / (alpha + b (1-beta)),
// delta(beta) = alpha (1-beta) / (alpha + b (1-beta)).
EpsDelta eps_delta(double alpha, double b_scalar, double beta);

// Member of the beta -> 1 family with |B0| = alpha / (1 - beta), so the total
// ball count stays at |b| + alpha / (1 - beta).
struct ScaledFamilyParams {
  double alpha = 1.0;
  Vector b;
  double beta = 0.0;
  // Direction of B0 on the simplex; defaults to p, which makes psi_0 = p.
  std::optional<Vector> B0_direction;
};

UrnParams build_family_member(const ScaledFamilyParams& fp);

// Native rescaled-time step (1 - beta)^2.
double rescaled_step(double beta);

// floor(t / (1-beta)^2), tolerant to the rounding in (1-beta)^2.
std::uint64_t rescaled_index(double t, double beta);

// ceil(t_max / (1-beta)^2): urn steps needed to reach rescaled time t_max.
std::uint64_t required_steps(double t_max, double beta);

struct RescaledPath {
  double beta = 0.0;
  std::vector<double> t_grid;
  SimplexSeries X;
};

// X_t = psi_{floor(t/(1-beta)^2)} on the grid {0, dt_out, ..., t_max}.
RescaledPath rescale_time(const UrnTrajectory& traj, double beta, double t_max,
                          double dt_out);

// Disjoint nonempty groups covering {0..k-1}; checked on construction.
class Partition {
 public:
  Partition(std::vector<std::vector<std::size_t>> groups, std::size_t k);

  static Partition identity(std::size_t k);

  std::size_t k() const { return group_of_.size(); }
  std::size_t size() const { return groups_.size(); }
  const std::vector<std::vector<std::size_t>>& groups() const { return groups_; }
  std::size_t group_of(std::size_t color) const { return group_of_[color]; }

  Vector project(std::span<const double> x) const;

 private:
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<std::size_t> group_of_;
};

// Grouped urn: params, draws and psi summed over each group. The result is a
// k_J-color urn trajectory.
UrnTrajectory project_group(const UrnTrajectory& traj, const Partition& partition);
RescaledPath project_group(const RescaledPath& path, const Partition& partition);
SimplexSeries project_group(const SimplexSeries& series, const Partition& partition);

}  // namespace rpwf
