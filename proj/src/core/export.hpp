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
#include <string>
#include <string_view>
#include <vector>

#include "core/scaling.hpp"
#include "core/stats.hpp"
#include "core/urn.hpp"
#include "core/wf_sde.hpp"

namespace rpwf {

// Shortest text that reads back to the same double ("%.17g").
std::string format_double(double v);

// n,color,psi_1..psi_k with 1-based colors; row 0 has an empty color.
std::string trajectory_csv(const UrnTrajectory& traj);
std::string trajectory_json(const UrnTrajectory& traj);

// t,X_1..X_k
std::string series_csv(const std::vector<double>& t, const SimplexSeries& X);
std::string path_json(const PathRecord& path);
std::string rescaled_json(const RescaledPath& path);

struct EnsembleSummary {
  std::vector<double> t;
  SimplexSeries mean;
  SimplexSeries stderr_;
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
};

// Pointwise mean and standard error over paths sharing one time grid.
EnsembleSummary summarize_ensemble(const std::vector<PathRecord>& paths, std::uint64_t seed);
std::string ensemble_json(const EnsembleSummary& summary);
std::string ensemble_csv(const EnsembleSummary& summary);

std::string convergence_json(const ConvergenceReport& report);
// source,replica,X_1..X_k for one (beta, checkpoint) pair; source is urn or wf.
std::string convergence_samples_csv(const ConvergenceReport& report, std::size_t beta_index,
                                    std::size_t checkpoint_index);
std::string stationary_json(const StationaryReport& report);

// Writes the whole string or throws kIo.
void write_text_file(const std::string& path, std::string_view content);

}  // namespace rpwf
