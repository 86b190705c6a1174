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

#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/scaling.hpp"
#include "test_util.hpp"

using namespace rpwf;

TEST_CASE("scaling: eps and delta follow from the balanced total") {
  for (double beta : {0.0, 0.5, 0.9, 0.999}) {
    const double alpha = 2.0, b = 3.0;
    const auto ed = eps_delta(alpha, b, beta);
    // r* = b + alpha/(1-beta); eps = b(1-beta)/r*, delta = alpha/r*
    const double r = b + alpha / (1.0 - beta);
    CHECK(ed.eps == doctest::Approx(b * (1.0 - beta) / r).epsilon(1e-14));
    CHECK(ed.delta == doctest::Approx(alpha / r).epsilon(1e-14));
  }
  CHECK_THROWS_AS(eps_delta(1.0, 1.0, 1.0), Error);
}

TEST_CASE("scaling: eps/(1-beta)^2 -> b/alpha and delta^2/(1-beta)^2 -> 1") {
  const double alpha = 1.5, b = 0.6;
  double prev_gap = 1e9;
  for (double beta : {0.9, 0.99, 0.999, 0.9999}) {
    const auto ed = eps_delta(alpha, b, beta);
    const double s = rescaled_step(beta);
    const double gap = std::abs(ed.eps / s - b / alpha) + std::abs(ed.delta * ed.delta / s - 1.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-3);
}

TEST_CASE("scaling: family member has constant total and psi_0 = direction") {
  ScaledFamilyParams fp;
  fp.alpha = 1.0;
  fp.b = {1.0, 3.0};
  fp.beta = 0.95;
  const UrnParams p = build_family_member(fp);
  CHECK(p.B0_total() == doctest::Approx(20.0));
  CHECK(total_balls(p, 1000) == doctest::Approx(24.0).epsilon(1e-13));
  const Vector psi0 = predictive_mean(p, new_urn(p));
  CHECK(psi0[0] == doctest::Approx(0.25));

  fp.B0_direction = Vector{0.9, 0.1};
  const UrnParams q = build_family_member(fp);
  CHECK(q.B0[0] == doctest::Approx(18.0));
  fp.B0_direction = Vector{0.9, 0.2};
  CHECK_THROWS_AS(build_family_member(fp), Error);
}

TEST_CASE("scaling: rescaled index tolerates rounding in (1-beta)^2") {
  CHECK(rescaled_index(1.0, 0.9) == 100);
  CHECK(required_steps(1.0, 0.9) == 100);
  CHECK(rescaled_index(1.0, 0.99) == 10000);
  CHECK(rescaled_index(0.5, 0.5) == 2);
  CHECK(rescaled_index(0.3, 0.5) == 1);
  CHECK(required_steps(0.3, 0.5) == 2);
  CHECK(rescaled_index(0.0, 0.7) == 0);
}

TEST_CASE("scaling: rescale_time samples psi on the grid") {
  ScaledFamilyParams fp;
  fp.b = {1.0, 1.0};
  fp.beta = 0.9;
  const UrnParams p = build_family_member(fp);
  const auto traj = simulate_urn(p, 300, 4);
  const RescaledPath path = rescale_time(traj, 0.9, 3.0, 0.25);
  REQUIRE(path.t_grid.size() == 13);
  for (std::size_t j = 0; j < path.t_grid.size(); ++j) {
    const auto idx = rescaled_index(path.t_grid[j], 0.9);
    CHECK(path.X.row(j) == traj.psi.row(idx));
  }
  try {
    rescale_time(traj, 0.9, 3.5, 0.25);
    FAIL("expected kTrajectoryTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTrajectoryTooShort);
    CHECK(std::string(e.what()).find("350") != std::string::npos);
  }
}

TEST_CASE("scaling: partitions are validated") {
  CHECK_NOTHROW(Partition({{0, 2}, {1}}, 3));
  auto code = [](std::vector<std::vector<std::size_t>> g, std::size_t k) {
    try {
      Partition(std::move(g), k);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  CHECK(code({{0}, {0, 1}}, 2) == ErrorCode::kNotAPartition);
  CHECK(code({{0}}, 2) == ErrorCode::kNotAPartition);
  CHECK(code({{0}, {}}, 1) == ErrorCode::kNotAPartition);
  CHECK(code({{0, 5}}, 2) == ErrorCode::kNotAPartition);
}

TEST_CASE("scaling: grouped urn follows the grouped recursion") {
  UrnParams p;
  p.alpha = 1.0;
  p.beta = 0.93;
  p.b = {0.5, 1.0, 1.5, 2.0};
  p.B0 = {1.0, 0.0, 2.0, 0.5};
  const auto traj = simulate_urn(p, 3000, 12);
  const Partition part({{0, 3}, {1, 2}}, 4);
  const auto grouped = project_group(traj, part);
  const auto replayed = replay_urn(grouped.params, grouped.draws);
  double worst = 0.0;
  for (std::size_t n = 0; n < grouped.psi.size(); ++n) {
    worst = std::max(worst, testing::max_abs_diff(grouped.psi.row(n), replayed.psi.row(n)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("scaling: identity partition leaves a path unchanged") {
  SimplexSeries s(3);
  s.push_back(Vector{0.2, 0.3, 0.5});
  s.push_back(Vector{0.1, 0.1, 0.8});
  const auto out = project_group(s, Partition::identity(3));
  CHECK(out.row(1) == s.row(1));
}
