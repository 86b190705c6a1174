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

#include "rpwf/rpwf.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/boundary.hpp"
#include "core/error.hpp"
#include "core/export.hpp"
#include "core/rng.hpp"
#include "core/scaling.hpp"
#include "core/simplex_polys.hpp"
#include "core/stats.hpp"
#include "core/urn.hpp"
#include "core/wf_sde.hpp"

struct rpwf_trajectory {
  rpwf::UrnTrajectory traj;
};

struct rpwf_path {
  std::vector<double> t;
  rpwf::SimplexSeries X;
  std::uint64_t seed = 0;
  bool rescaled = false;
  double beta = 0.0;
};

struct rpwf_convergence {
  rpwf::ConvergenceReport report;
};

namespace {

thread_local std::string g_last_error;

rpwf_status to_status(rpwf::ErrorCode code) {
  using rpwf::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return RPWF_E_INVALID_ARGUMENT;
    case ErrorCode::kNonPositiveAlpha: return RPWF_E_NON_POSITIVE_ALPHA;
    case ErrorCode::kBetaOutOfRange: return RPWF_E_BETA_OUT_OF_RANGE;
    case ErrorCode::kZeroFixedTotal: return RPWF_E_ZERO_FIXED_TOTAL;
    case ErrorCode::kNonPositiveInitialBalls: return RPWF_E_NON_POSITIVE_INITIAL_BALLS;
    case ErrorCode::kDimensionMismatch: return RPWF_E_DIMENSION_MISMATCH;
    case ErrorCode::kNotOnSimplex: return RPWF_E_NOT_ON_SIMPLEX;
    case ErrorCode::kTrajectoryTooShort: return RPWF_E_TRAJECTORY_TOO_SHORT;
    case ErrorCode::kNotAPartition: return RPWF_E_NOT_A_PARTITION;
    case ErrorCode::kUnsupportedRange: return RPWF_E_UNSUPPORTED_RANGE;
    case ErrorCode::kOutOfInterval: return RPWF_E_OUT_OF_INTERVAL;
    case ErrorCode::kDomain: return RPWF_E_DOMAIN;
    case ErrorCode::kIo: return RPWF_E_IO;
    case ErrorCode::kInternal: return RPWF_E_INTERNAL;
  }
  return RPWF_E_INTERNAL;
}

struct NullArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <class F>
rpwf_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return RPWF_OK;
  } catch (const rpwf::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const NullArgument& e) {
    g_last_error = e.what();
    return RPWF_E_NULL_POINTER;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RPWF_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RPWF_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return RPWF_E_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) {
    throw NullArgument(std::string(name) + " is NULL");
  }
}

std::vector<double> copy(const double* data, std::size_t n) {
  return std::vector<double>(data, data + n);
}

rpwf::UrnParams urn_from(const rpwf_urn_params* p) {
  need(p, "params");
  need(p->b, "params->b");
  rpwf::UrnParams out;
  out.alpha = p->alpha;
  out.beta = p->beta;
  out.b = copy(p->b, p->k);
  out.B0 = p->B0 ? copy(p->B0, p->k) : std::vector<double>(p->k, 0.0);
  rpwf::validate(out);
  return out;
}

rpwf::WfParams wf_from(const rpwf_wf_params* p) {
  need(p, "params");
  need(p->p, "params->p");
  rpwf::WfParams out;
  out.alpha = p->alpha;
  out.b_scalar = p->b;
  out.p = copy(p->p, p->k);
  rpwf::validate(out);
  return out;
}

rpwf::SdeConfig sde_from(const rpwf_sde_config* c) {
  rpwf::SdeConfig out;
  if (c != nullptr) {
    out.dt = c->dt;
    out.clamp = c->clamp != 0;
  }
  return out;
}

rpwf::Vector start_from(const double* x0, const rpwf::WfParams& wf) {
  return x0 ? copy(x0, wf.k()) : wf.p;
}

std::vector<std::size_t> colors_from(const size_t* colors, size_t n) {
  if (n > 0) need(colors, "colors");
  return std::vector<std::size_t>(colors, colors + n);
}

rpwf::IntervalProblem interval_from(const rpwf_interval* ip) {
  need(ip, "interval");
  rpwf::IntervalProblem out{{ip->a0, ip->a1}, ip->a, ip->b};
  rpwf::validate(out);
  return out;
}

rpwf::UrnParams family_urn(const rpwf::WfParams& wf, double beta, const rpwf::Vector& x0) {
  rpwf::ScaledFamilyParams fp;
  fp.alpha = wf.alpha;
  for (double p : wf.p) fp.b.push_back(wf.b_scalar * p);
  fp.beta = beta;
  fp.B0_direction = x0;
  return rpwf::build_family_member(fp);
}

const rpwf::MarginalComparison& marginal_at(const rpwf_convergence* r, size_t bi, size_t ci,
                                            size_t mi) {
  need(r, "report");
  const auto& per_beta = r->report.per_beta;
  rpwf::require(bi < per_beta.size() && ci < per_beta[bi].checkpoints.size() &&
                    mi < per_beta[bi].checkpoints[ci].marginals.size(),
                rpwf::ErrorCode::kInvalidArgument, "report index out of range");
  return per_beta[bi].checkpoints[ci].marginals[mi];
}

}  // namespace

extern "C" {

const char* rpwf_version(void) { return "0.1.0"; }

const char* rpwf_status_name(rpwf_status status) {
  switch (status) {
    case RPWF_OK: return "ok";
    case RPWF_E_INVALID_ARGUMENT: return "invalid argument";
    case RPWF_E_NON_POSITIVE_ALPHA: return "non-positive alpha";
    case RPWF_E_BETA_OUT_OF_RANGE: return "beta out of range";
    case RPWF_E_ZERO_FIXED_TOTAL: return "zero fixed total";
    case RPWF_E_NON_POSITIVE_INITIAL_BALLS: return "non-positive initial balls";
    case RPWF_E_DIMENSION_MISMATCH: return "dimension mismatch";
    case RPWF_E_NOT_ON_SIMPLEX: return "not on simplex";
    case RPWF_E_TRAJECTORY_TOO_SHORT: return "trajectory too short";
    case RPWF_E_NOT_A_PARTITION: return "not a partition";
    case RPWF_E_UNSUPPORTED_RANGE: return "unsupported range";
    case RPWF_E_OUT_OF_INTERVAL: return "out of interval";
    case RPWF_E_DOMAIN: return "domain error";
    case RPWF_E_IO: return "i/o error";
    case RPWF_E_NULL_POINTER: return "null pointer";
    case RPWF_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* rpwf_last_error(void) { return g_last_error.c_str(); }

rpwf_status rpwf_validate_urn_params(const rpwf_urn_params* params) {
  return guarded([&] { urn_from(params); });
}

rpwf_status rpwf_validate_wf_params(const rpwf_wf_params* params) {
  return guarded([&] { wf_from(params); });
}

rpwf_status rpwf_urn_simulate(const rpwf_urn_params* params, uint64_t steps, uint64_t seed,
                              rpwf_trajectory** out) {
  if (out == nullptr) return RPWF_E_NULL_POINTER;
  *out = nullptr;
  return guarded([&] {
    auto h = std::make_unique<rpwf_trajectory>();
    h->traj = rpwf::simulate_urn(urn_from(params), steps, seed);
    *out = h.release();
  });
}

void rpwf_trajectory_free(rpwf_trajectory* traj) { delete traj; }

size_t rpwf_trajectory_steps(const rpwf_trajectory* traj) {
  return traj ? traj->traj.draws.size() : 0;
}

size_t rpwf_trajectory_k(const rpwf_trajectory* traj) {
  return traj ? traj->traj.params.k() : 0;
}

rpwf_status rpwf_trajectory_psi(const rpwf_trajectory* traj, size_t n, double* out) {
  if (traj == nullptr || out == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    rpwf::require(n < traj->traj.psi.size(), rpwf::ErrorCode::kInvalidArgument,
                  "step index out of range");
    for (std::size_t i = 0; i < traj->traj.psi.dim(); ++i) out[i] = traj->traj.psi.at(n, i);
  });
}

rpwf_status rpwf_trajectory_draw(const rpwf_trajectory* traj, size_t n, size_t* color) {
  if (traj == nullptr || color == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    rpwf::require(n >= 1 && n <= traj->traj.draws.size(), rpwf::ErrorCode::kInvalidArgument,
                  "draw index out of range");
    *color = traj->traj.draws[n - 1].color;
  });
}

rpwf_status rpwf_trajectory_chi_squared(const rpwf_trajectory* traj, double* out) {
  if (traj == nullptr || out == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    const auto counts = rpwf::color_counts(traj->traj.draws, traj->traj.params.k());
    *out = rpwf::chi_squared(counts, traj->traj.params.p()).statistic;
  });
}

rpwf_status rpwf_trajectory_empirical_mean(const rpwf_trajectory* traj, double* out) {
  if (traj == nullptr || out == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    const std::size_t k = traj->traj.params.k();
    const auto counts = rpwf::color_counts(traj->traj.draws, k);
    rpwf::require(!traj->traj.draws.empty(), rpwf::ErrorCode::kInvalidArgument,
                  "trajectory has no draws");
    const double n = static_cast<double>(traj->traj.draws.size());
    for (std::size_t i = 0; i < k; ++i) out[i] = static_cast<double>(counts[i]) / n;
  });
}

rpwf_status rpwf_trajectory_write(const rpwf_trajectory* traj, const char* path,
                                  rpwf_format format) {
  if (traj == nullptr || path == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    rpwf::write_text_file(path, format == RPWF_FORMAT_JSON ? rpwf::trajectory_json(traj->traj)
                                                           : rpwf::trajectory_csv(traj->traj));
  });
}

rpwf_status rpwf_wf_simulate(const rpwf_wf_params* params, const double* x0, double t_max,
                             const rpwf_sde_config* config, uint64_t seed, rpwf_path** out) {
  if (out == nullptr) return RPWF_E_NULL_POINTER;
  *out = nullptr;
  return guarded([&] {
    const rpwf::WfParams wf = wf_from(params);
    const rpwf::Vector start = start_from(x0, wf);
    rpwf::PathRecord rec = rpwf::simulate_wf(wf, start, t_max, sde_from(config), seed);
    auto h = std::make_unique<rpwf_path>();
    h->t = std::move(rec.t);
    h->X = std::move(rec.X);
    h->seed = seed;
    *out = h.release();
  });
}

rpwf_status rpwf_rescaled_urn_path(const rpwf_wf_params* params, double beta, const double* x0,
                                   double t_max, double dt_out, uint64_t seed, rpwf_path** out) {
  if (out == nullptr) return RPWF_E_NULL_POINTER;
  *out = nullptr;
  return guarded([&] {
    const rpwf::WfParams wf = wf_from(params);
    const rpwf::UrnParams urn = family_urn(wf, beta, start_from(x0, wf));
    rpwf::require(std::isfinite(t_max) && t_max >= 0.0, rpwf::ErrorCode::kInvalidArgument,
                  "t_max must be >= 0");
    const auto traj = rpwf::simulate_urn(urn, rpwf::required_steps(t_max, beta), seed);
    rpwf::RescaledPath rp = rpwf::rescale_time(traj, beta, t_max, dt_out);
    auto h = std::make_unique<rpwf_path>();
    h->t = std::move(rp.t_grid);
    h->X = std::move(rp.X);
    h->seed = seed;
    h->rescaled = true;
    h->beta = beta;
    *out = h.release();
  });
}

void rpwf_path_free(rpwf_path* path) { delete path; }

size_t rpwf_path_length(const rpwf_path* path) { return path ? path->t.size() : 0; }

size_t rpwf_path_k(const rpwf_path* path) { return path ? path->X.dim() : 0; }

rpwf_status rpwf_path_point(const rpwf_path* path, size_t i, double* t, double* x) {
  if (path == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    rpwf::require(i < path->t.size(), rpwf::ErrorCode::kInvalidArgument,
                  "path index out of range");
    if (t != nullptr) *t = path->t[i];
    if (x != nullptr) {
      for (std::size_t c = 0; c < path->X.dim(); ++c) x[c] = path->X.at(i, c);
    }
  });
}

rpwf_status rpwf_path_write(const rpwf_path* path, const char* path_name, rpwf_format format) {
  if (path == nullptr || path_name == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    std::string text;
    if (format == RPWF_FORMAT_CSV) {
      text = rpwf::series_csv(path->t, path->X);
    } else if (path->rescaled) {
      text = rpwf::rescaled_json({path->beta, path->t, path->X});
    } else {
      text = rpwf::path_json({path->seed, path->t, path->X});
    }
    rpwf::write_text_file(path_name, text);
  });
}

rpwf_status rpwf_wf_ensemble_write(const rpwf_wf_params* params, const double* x0,
                                   double t_max, const rpwf_sde_config* config, uint64_t seed,
                                   size_t paths, unsigned workers, const char* path_name,
                                   rpwf_format format) {
  if (path_name == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    const rpwf::WfParams wf = wf_from(params);
    const rpwf::Vector start = start_from(x0, wf);
    const rpwf::SdeConfig sde = sde_from(config);
    rpwf::require(paths >= 1, rpwf::ErrorCode::kInvalidArgument, "paths must be >= 1");
    std::vector<rpwf::PathRecord> records(paths);
    rpwf::parallel_for(paths, workers, [&](std::size_t r) {
      records[r] = rpwf::simulate_wf(wf, start, t_max, sde, rpwf::derive_seed(seed, "wf.path", r));
    });
    const rpwf::EnsembleSummary summary = rpwf::summarize_ensemble(records, seed);
    rpwf::write_text_file(path_name, format == RPWF_FORMAT_JSON ? rpwf::ensemble_json(summary)
                                                                : rpwf::ensemble_csv(summary));
  });
}

rpwf_status rpwf_transition_density(const rpwf_wf_params* params, const double* y0,
                                    const double* y, double t, int max_degree,
                                    rpwf_density_result* out) {
  if (out == nullptr || y0 == nullptr || y == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    const rpwf::WfParams wf = wf_from(params);
    const std::size_t d = wf.k() - 1;
    const int degree = max_degree < 0 ? rpwf::max_transition_degree(d) : max_degree;
    const auto r = rpwf::transition_density(std::span<const double>(y0, d),
                                            std::span<const double>(y, d), t, wf, degree);
    out->value = r.value;
    out->tail_term = r.tail_term;
    out->n_terms = r.n_terms;
    out->small_time = r.small_time ? 1 : 0;
    out->truncation_warning = r.truncation_warning ? 1 : 0;
  });
}

rpwf_status rpwf_stationary_density(const rpwf_wf_params* params, const double* y, double* out) {
  if (out == nullptr || y == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    const rpwf::WfParams wf = wf_from(params);
    const auto gw = rpwf::GammaWeights::from_wf(wf);
    *out = rpwf::dirichlet_density(gw, std::span<const double>(y, gw.dim()));
  });
}

rpwf_status rpwf_classify_boundary(double a_z, rpwf_boundary_type* out) {
  if (out == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    switch (rpwf::classify_boundary(a_z)) {
      case rpwf::BoundaryType::kExit: *out = RPWF_BOUNDARY_EXIT; break;
      case rpwf::BoundaryType::kRegular: *out = RPWF_BOUNDARY_REGULAR; break;
      case rpwf::BoundaryType::kEntrance: *out = RPWF_BOUNDARY_ENTRANCE; break;
    }
  });
}

const char* rpwf_boundary_name(rpwf_boundary_type type) {
  switch (type) {
    case RPWF_BOUNDARY_EXIT: return "exit";
    case RPWF_BOUNDARY_REGULAR: return "regular";
    case RPWF_BOUNDARY_ENTRANCE: return "entrance";
  }
  return "unknown";
}

rpwf_status rpwf_group_to_1d(const rpwf_wf_params* params, const size_t* colors,
                             size_t n_colors, double* a0, double* a1) {
  if (a0 == nullptr || a1 == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    const auto od = rpwf::group_to_1d(wf_from(params), colors_from(colors, n_colors));
    *a0 = od.a0;
    *a1 = od.a1;
  });
}

rpwf_status rpwf_is_recessive(const rpwf_wf_params* params, const size_t* colors,
                              size_t n_colors, int* out) {
  if (out == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    *out = rpwf::is_recessive(wf_from(params), colors_from(colors, n_colors)) ? 1 : 0;
  });
}

rpwf_status rpwf_is_dominant(const rpwf_wf_params* params, size_t color, int* out) {
  if (out == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] { *out = rpwf::is_dominant(wf_from(params), color) ? 1 : 0; });
}

rpwf_status rpwf_scale_increment(double a0, double a1, double x, double y, double* out) {
  if (out == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] { *out = rpwf::ScaleFunction({a0, a1}).increment(x, y); });
}

rpwf_status rpwf_speed_density(double a0, double a1, double z, double* out) {
  if (out == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] { *out = rpwf::speed_density({a0, a1}, z); });
}

rpwf_status rpwf_hitting_prob(const rpwf_interval* ip, double z0, double* out) {
  if (out == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] { *out = rpwf::hitting_prob(interval_from(ip), z0); });
}

rpwf_status rpwf_green_function(const rpwf_interval* ip, double x, double s, double* out) {
  if (out == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] { *out = rpwf::green_function(interval_from(ip), x, s); });
}

rpwf_status rpwf_mean_exit_time(const rpwf_interval* ip, double z0, double* out) {
  if (out == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] { *out = rpwf::mean_exit_time(interval_from(ip), z0); });
}

rpwf_status rpwf_return_ratio_density(double a0, double a1, double z0, double* out) {
  if (out == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] { *out = rpwf::return_ratio_density({a0, a1}, z0); });
}

rpwf_status rpwf_converge(const rpwf_converge_config* config, rpwf_convergence** out) {
  if (config == nullptr || out == nullptr) return RPWF_E_NULL_POINTER;
  *out = nullptr;
  return guarded([&] {
    rpwf::ConvergenceConfig c;
    c.wf = wf_from(&config->wf);
    if (config->x0) c.x0 = copy(config->x0, c.wf.k());
    if (config->n_betas > 0) need(config->betas, "betas");
    if (config->n_checkpoints > 0) need(config->checkpoints, "checkpoints");
    c.betas = copy(config->betas, config->n_betas);
    c.checkpoints = copy(config->checkpoints, config->n_checkpoints);
    c.replicas = config->replicas;
    c.wf_paths = config->wf_paths;
    if (config->dt > 0.0) c.sde.dt = config->dt;
    c.seed = config->seed;
    c.workers = config->workers;
    auto h = std::make_unique<rpwf_convergence>();
    h->report = rpwf::convergence_experiment(c);
    *out = h.release();
  });
}

void rpwf_convergence_free(rpwf_convergence* report) { delete report; }

size_t rpwf_convergence_marginals(const rpwf_convergence* report) {
  return report ? report->report.groups.size() : 0;
}

rpwf_status rpwf_convergence_ks(const rpwf_convergence* report, size_t beta_index,
                                size_t checkpoint_index, size_t marginal_index, double* D,
                                double* critical_1) {
  return guarded([&] {
    const auto& m = marginal_at(report, beta_index, checkpoint_index, marginal_index);
    if (D) *D = m.ks.D;
    if (critical_1) *critical_1 = m.ks.critical_1;
  });
}

rpwf_status rpwf_convergence_mean_D(const rpwf_convergence* report, size_t beta_index,
                                    double* out) {
  if (report == nullptr || out == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    rpwf::require(beta_index < report->report.per_beta.size(), rpwf::ErrorCode::kInvalidArgument,
                  "beta index out of range");
    *out = report->report.per_beta[beta_index].mean_D;
  });
}

rpwf_status rpwf_convergence_trend(const rpwf_convergence* report, int* out) {
  if (report == nullptr || out == nullptr) return RPWF_E_NULL_POINTER;
  *out = report->report.trend_non_increasing ? 1 : 0;
  return RPWF_OK;
}

rpwf_status rpwf_convergence_write_json(const rpwf_convergence* report, const char* path) {
  if (report == nullptr || path == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] { rpwf::write_text_file(path, rpwf::convergence_json(report->report)); });
}

rpwf_status rpwf_convergence_write_samples(const rpwf_convergence* report, size_t beta_index,
                                           size_t checkpoint_index, const char* path) {
  if (report == nullptr || path == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    rpwf::write_text_file(
        path, rpwf::convergence_samples_csv(report->report, beta_index, checkpoint_index));
  });
}

rpwf_status rpwf_stationary_test(const rpwf_stationary_config* config,
                                 rpwf_stationary_result* out, const char* json_path) {
  if (config == nullptr || out == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    rpwf::StationaryConfig c;
    c.wf = wf_from(&config->wf);
    c.beta = config->beta;
    c.t = config->t;
    c.color = config->color;
    c.replicas = config->replicas;
    if (config->x0) c.x0 = copy(config->x0, c.wf.k());
    c.seed = config->seed;
    c.workers = config->workers;
    const rpwf::StationaryReport r = rpwf::stationary_experiment(c);
    out->D = r.ks.D;
    out->critical_1 = r.ks.critical_1;
    out->critical_5 = r.ks.critical_5;
    out->n_samples = r.ks.n1;
    out->urn_step = r.urn_step;
    if (json_path != nullptr) rpwf::write_text_file(json_path, rpwf::stationary_json(r));
  });
}

rpwf_status rpwf_required_steps(double t, double beta, uint64_t* out) {
  if (out == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] { *out = rpwf::required_steps(t, beta); });
}

rpwf_status rpwf_chi_squared(const uint64_t* counts, const double* p, size_t k, double* out) {
  if (counts == nullptr || p == nullptr || out == nullptr) return RPWF_E_NULL_POINTER;
  return guarded([&] {
    const std::vector<std::uint64_t> o(counts, counts + k);
    *out = rpwf::chi_squared(o, std::span<const double>(p, k)).statistic;
  });
}

uint64_t rpwf_derive_seed(uint64_t master, const char* label, uint64_t index) {
  return rpwf::derive_seed(master, label ? label : "", index);
}

}  // extern "C"
