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

#include "core/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"

namespace rpwf {

namespace {

using nlohmann::json;

json to_json(const SimplexSeries& s) {
  json rows = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) rows.push_back(s.row(i));
  return rows;
}

json to_json(const KsReport& ks) {
  json j = {{"D", ks.D}, {"n1", ks.n1}, {"critical_1", ks.critical_1},
            {"critical_5", ks.critical_5}};
  if (ks.n2 > 0) j["n2"] = ks.n2;
  return j;
}

json to_json(const WfParams& wf) {
  return {{"alpha", wf.alpha}, {"b", wf.b_scalar}, {"p", wf.p}};
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& colors) {
  std::vector<std::size_t> out;
  for (std::size_t c : colors) out.push_back(c + 1);
  return out;
}

void header_row(std::ostringstream& os, std::string_view first, std::string_view prefix,
                std::size_t k) {
  os << first;
  for (std::size_t i = 1; i <= k; ++i) os << ',' << prefix << '_' << i;
  os << '\n';
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trajectory_csv(const UrnTrajectory& traj) {
  std::ostringstream os;
  const std::size_t k = traj.psi.dim();
  header_row(os, "n,color", "psi", k);
  for (std::size_t n = 0; n < traj.psi.size(); ++n) {
    os << n << ',';
    if (n > 0) os << traj.draws[n - 1].color + 1;
    for (std::size_t i = 0; i < k; ++i) os << ',' << format_double(traj.psi.at(n, i));
    os << '\n';
  }
  return os.str();
}

std::string trajectory_json(const UrnTrajectory& traj) {
  std::vector<std::size_t> draws;
  draws.reserve(traj.draws.size());
  for (const DrawOutcome& d : traj.draws) draws.push_back(d.color + 1);
  const json j = {
      {"params",
       {{"alpha", traj.params.alpha},
        {"beta", traj.params.beta},
        {"b", traj.params.b},
        {"B0", traj.params.B0}}},
      {"seed", traj.seed},
      {"draws", draws},
      {"psi", to_json(traj.psi)},
  };
  return j.dump() + "\n";
}

std::string series_csv(const std::vector<double>& t, const SimplexSeries& X) {
  require(t.size() == X.size(), ErrorCode::kDimensionMismatch, "time grid and series differ");
  std::ostringstream os;
  header_row(os, "t", "X", X.dim());
  for (std::size_t n = 0; n < X.size(); ++n) {
    os << format_double(t[n]);
    for (std::size_t i = 0; i < X.dim(); ++i) os << ',' << format_double(X.at(n, i));
    os << '\n';
  }
  return os.str();
}

std::string path_json(const PathRecord& path) {
  const json j = {{"seed", path.seed}, {"t", path.t}, {"X", to_json(path.X)}};
  return j.dump() + "\n";
}

std::string rescaled_json(const RescaledPath& path) {
  const json j = {{"beta", path.beta}, {"t", path.t_grid}, {"X", to_json(path.X)}};
  return j.dump() + "\n";
}

EnsembleSummary summarize_ensemble(const std::vector<PathRecord>& paths, std::uint64_t seed) {
  require(!paths.empty(), ErrorCode::kInvalidArgument, "need at least one path");
  const std::size_t rows = paths.front().X.size();
  const std::size_t k = paths.front().X.dim();
  EnsembleSummary s;
  s.t = paths.front().t;
  s.n_paths = paths.size();
  s.seed = seed;
  s.mean = SimplexSeries(k);
  s.stderr_ = SimplexSeries(k);
  const double m = static_cast<double>(paths.size());
  Vector mean(k);
  Vector se(k);
  for (std::size_t n = 0; n < rows; ++n) {
    for (std::size_t i = 0; i < k; ++i) {
      double sum = 0.0;
      for (const PathRecord& p : paths) sum += p.X.at(n, i);
      mean[i] = sum / m;
      double ss = 0.0;
      for (const PathRecord& p : paths) ss += (p.X.at(n, i) - mean[i]) * (p.X.at(n, i) - mean[i]);
      se[i] = paths.size() > 1 ? std::sqrt(ss / (m - 1.0) / m) : 0.0;
    }
    s.mean.push_back(mean);
    s.stderr_.push_back(se);
  }
  return s;
}

std::string ensemble_json(const EnsembleSummary& summary) {
  const json j = {{"t", summary.t},
                  {"mean", to_json(summary.mean)},
                  {"stderr", to_json(summary.stderr_)},
                  {"n_paths", summary.n_paths},
                  {"seed", summary.seed}};
  return j.dump() + "\n";
}

std::string ensemble_csv(const EnsembleSummary& summary) {
  std::ostringstream os;
  const std::size_t k = summary.mean.dim();
  os << 't';
  for (std::size_t i = 1; i <= k; ++i) os << ",mean_" << i;
  for (std::size_t i = 1; i <= k; ++i) os << ",stderr_" << i;
  os << '\n';
  for (std::size_t n = 0; n < summary.t.size(); ++n) {
    os << format_double(summary.t[n]);
    for (std::size_t i = 0; i < k; ++i) os << ',' << format_double(summary.mean.at(n, i));
    for (std::size_t i = 0; i < k; ++i) os << ',' << format_double(summary.stderr_.at(n, i));
    os << '\n';
  }
  return os.str();
}

std::string convergence_json(const ConvergenceReport& report) {
  const ConvergenceConfig& c = report.config;
  json groups = json::array();
  for (const auto& g : report.groups) groups.push_back(one_based(g));
  json per_beta = json::array();
  for (const BetaComparison& bc : report.per_beta) {
    json cps = json::array();
    for (const CheckpointComparison& cc : bc.checkpoints) {
      json ms = json::array();
      for (const MarginalComparison& mc : cc.marginals) {
        ms.push_back({{"group", one_based(mc.group)},
                      {"ks", to_json(mc.ks)},
                      {"urn_mean", mc.urn_mean},
                      {"wf_mean", mc.wf_mean},
                      {"mean_z", mc.mean_z},
                      {"urn_var", mc.urn_var},
                      {"wf_var", mc.wf_var}});
      }
      cps.push_back({{"t", cc.t}, {"urn_step", cc.urn_step}, {"marginals", ms}});
    }
    per_beta.push_back({{"beta", bc.beta}, {"mean_D", bc.mean_D}, {"checkpoints", cps}});
  }
  const json j = {
      {"params", to_json(c.wf)},
      {"x0", c.x0.empty() ? c.wf.p : c.x0},
      {"betas", c.betas},
      {"checkpoints", c.checkpoints},
      {"replicas", c.replicas},
      {"wf_paths", c.wf_paths == 0 ? c.replicas : c.wf_paths},
      {"dt", c.sde.dt},
      {"seed", c.seed},
      {"groups", groups},
      {"per_beta", per_beta},
      {"trend_non_increasing", report.trend_non_increasing},
  };
  return j.dump(2) + "\n";
}

std::string convergence_samples_csv(const ConvergenceReport& report, std::size_t beta_index,
                                    std::size_t checkpoint_index) {
  require(beta_index < report.urn_samples.size() &&
              checkpoint_index < report.wf_samples.size(),
          ErrorCode::kInvalidArgument, "beta or checkpoint index out of range");
  std::ostringstream os;
  const std::size_t k = report.config.wf.k();
  header_row(os, "source,replica", "X", k);
  auto emit = [&](std::string_view source, const std::vector<Vector>& xs) {
    for (std::size_t r = 0; r < xs.size(); ++r) {
      os << source << ',' << r;
      for (double v : xs[r]) os << ',' << format_double(v);
      os << '\n';
    }
  };
  emit("urn", report.urn_samples[beta_index][checkpoint_index]);
  emit("wf", report.wf_samples[checkpoint_index]);
  return os.str();
}

std::string stationary_json(const StationaryReport& report) {
  const StationaryConfig& c = report.config;
  const json j = {
      {"params", to_json(c.wf)},
      {"beta", c.beta},
      {"t", c.t},
      {"urn_step", report.urn_step},
      {"color", c.color + 1},
      {"replicas", c.replicas},
      {"seed", c.seed},
      {"beta_shape", {2.0 * report.marginal.a0, 2.0 * report.marginal.a1}},
      {"ks", to_json(report.ks)},
      {"reject_5", report.ks.D > report.ks.critical_5},
  };
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) fail(ErrorCode::kIo, "failed writing '" + path + "'");
}

}  // namespace rpwf
