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

/* C interface to the rpwf library: rescaled Polya urns, the Wright-Fisher
 * diffusion they approximate, and its spectral and boundary analytics.
 *
 * Every call returns an rpwf_status. On failure a description of the error
 * is available from rpwf_last_error() on the calling thread. Objects are
 * opaque handles released with the matching *_free function. Color indices
 * are 0-based throughout. */

#ifndef RPWF_RPWF_H_
#define RPWF_RPWF_H_

#include <stddef.h>
#include <stdint.h>

#if defined(RPWF_BUILDING_LIBRARY)
#define RPWF_API __attribute__((visibility("default")))
#else
#define RPWF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rpwf_status {
  RPWF_OK = 0,
  RPWF_E_INVALID_ARGUMENT = 1,
  RPWF_E_NON_POSITIVE_ALPHA = 2,
  RPWF_E_BETA_OUT_OF_RANGE = 3,
  RPWF_E_ZERO_FIXED_TOTAL = 4,
  RPWF_E_NON_POSITIVE_INITIAL_BALLS = 5,
  RPWF_E_DIMENSION_MISMATCH = 6,
  RPWF_E_NOT_ON_SIMPLEX = 7,
  RPWF_E_TRAJECTORY_TOO_SHORT = 8,
  RPWF_E_NOT_A_PARTITION = 9,
  RPWF_E_UNSUPPORTED_RANGE = 10,
  RPWF_E_OUT_OF_INTERVAL = 11,
  RPWF_E_DOMAIN = 12,
  RPWF_E_IO = 13,
  RPWF_E_NULL_POINTER = 14,
  RPWF_E_INTERNAL = 15
} rpwf_status;

typedef enum rpwf_format { RPWF_FORMAT_CSV = 0, RPWF_FORMAT_JSON = 1 } rpwf_format;

typedef enum rpwf_boundary_type {
  RPWF_BOUNDARY_EXIT = 0,
  RPWF_BOUNDARY_REGULAR = 1,
  RPWF_BOUNDARY_ENTRANCE = 2
} rpwf_boundary_type;

RPWF_API const char* rpwf_version(void);
RPWF_API const char* rpwf_status_name(rpwf_status status);
/* Message of the most recent failure on this thread; "" if none. */
RPWF_API const char* rpwf_last_error(void);

/* B_{n+1} = beta B_n + alpha xi_{n+1}; the urn holds b + B_n balls. */
typedef struct rpwf_urn_params {
  double alpha;
  double beta;
  size_t k;
  const double* b;  /* k entries */
  const double* B0; /* k entries, NULL for zeros */
} rpwf_urn_params;

/* dX = -(b/alpha)(X - p) dt + Sigma(X) dW on the simplex. */
typedef struct rpwf_wf_params {
  double alpha;
  double b; /* total mutation weight |b| */
  size_t k;
  const double* p; /* k entries summing to 1 */
} rpwf_wf_params;

typedef struct rpwf_sde_config {
  double dt;
  int clamp; /* nonzero: clamp and project back onto the simplex */
} rpwf_sde_config;

RPWF_API rpwf_status rpwf_validate_urn_params(const rpwf_urn_params* params);
RPWF_API rpwf_status rpwf_validate_wf_params(const rpwf_wf_params* params);

/* ---- urn trajectories ---- */

typedef struct rpwf_trajectory rpwf_trajectory;

RPWF_API rpwf_status rpwf_urn_simulate(const rpwf_urn_params* params, uint64_t steps,
                                       uint64_t seed, rpwf_trajectory** out);
RPWF_API void rpwf_trajectory_free(rpwf_trajectory* traj);
RPWF_API size_t rpwf_trajectory_steps(const rpwf_trajectory* traj);
RPWF_API size_t rpwf_trajectory_k(const rpwf_trajectory* traj);
/* psi_n for n in [0, steps]; writes k values. */
RPWF_API rpwf_status rpwf_trajectory_psi(const rpwf_trajectory* traj, size_t n, double* out);
/* Color of draw n for n in [1, steps]. */
RPWF_API rpwf_status rpwf_trajectory_draw(const rpwf_trajectory* traj, size_t n,
                                          size_t* color);
/* N sum_i (O_i/N - p_i)^2 / p_i over the draw counts, with p = b/|b|. */
RPWF_API rpwf_status rpwf_trajectory_chi_squared(const rpwf_trajectory* traj, double* out);
/* Running mean of the draws after all steps; writes k values. */
RPWF_API rpwf_status rpwf_trajectory_empirical_mean(const rpwf_trajectory* traj, double* out);
RPWF_API rpwf_status rpwf_trajectory_write(const rpwf_trajectory* traj, const char* path,
                                           rpwf_format format);

/* ---- time series on a grid: WF paths and rescaled urn paths ---- */

typedef struct rpwf_path rpwf_path;

RPWF_API rpwf_status rpwf_wf_simulate(const rpwf_wf_params* params, const double* x0,
                                      double t_max, const rpwf_sde_config* config,
                                      uint64_t seed, rpwf_path** out);
/* Urn member of the scaling family at beta: b_i = b p_i, balanced start
 * |B0| = alpha/(1-beta) in direction x0 (NULL for p), run far enough to be
 * observed at rescaled times 0, dt_out, ..., t_max. */
RPWF_API rpwf_status rpwf_rescaled_urn_path(const rpwf_wf_params* params, double beta,
                                            const double* x0, double t_max, double dt_out,
                                            uint64_t seed, rpwf_path** out);
RPWF_API void rpwf_path_free(rpwf_path* path);
RPWF_API size_t rpwf_path_length(const rpwf_path* path);
RPWF_API size_t rpwf_path_k(const rpwf_path* path);
RPWF_API rpwf_status rpwf_path_point(const rpwf_path* path, size_t i, double* t, double* x);
RPWF_API rpwf_status rpwf_path_write(const rpwf_path* path, const char* path_name,
                                     rpwf_format format);

/* Pointwise mean and standard error over independent WF paths. */
RPWF_API rpwf_status rpwf_wf_ensemble_write(const rpwf_wf_params* params, const double* x0,
                                            double t_max, const rpwf_sde_config* config,
                                            uint64_t seed, size_t paths, unsigned workers,
                                            const char* path_name, rpwf_format format);

/* ---- densities ---- */

typedef struct rpwf_density_result {
  double value;
  double tail_term;
  int n_terms;
  int small_time;         /* t below the reliable range of the series */
  int truncation_warning; /* tail term above 1e-6 of the value */
} rpwf_density_result;

/* y0 and y have k-1 coordinates in the open simplex {y_i > 0, sum y < 1}.
 * max_degree < 0 selects the largest supported truncation. */
RPWF_API rpwf_status rpwf_transition_density(const rpwf_wf_params* params, const double* y0,
                                             const double* y, double t, int max_degree,
                                             rpwf_density_result* out);
RPWF_API rpwf_status rpwf_stationary_density(const rpwf_wf_params* params, const double* y,
                                             double* out);

/* ---- boundaries of grouped frequencies ---- */

RPWF_API rpwf_status rpwf_classify_boundary(double a_z, rpwf_boundary_type* out);
RPWF_API const char* rpwf_boundary_name(rpwf_boundary_type type);
RPWF_API rpwf_status rpwf_group_to_1d(const rpwf_wf_params* params, const size_t* colors,
                                      size_t n_colors, double* a0, double* a1);
RPWF_API rpwf_status rpwf_is_recessive(const rpwf_wf_params* params, const size_t* colors,
                                       size_t n_colors, int* out);
RPWF_API rpwf_status rpwf_is_dominant(const rpwf_wf_params* params, size_t color, int* out);

/* ---- 1-d marginal dZ = (a0(1-Z) - a1 Z) dt + sqrt(Z(1-Z)) dW on (a, b) ---- */

typedef struct rpwf_interval {
  double a0;
  double a1;
  double a;
  double b;
} rpwf_interval;

RPWF_API rpwf_status rpwf_scale_increment(double a0, double a1, double x, double y,
                                          double* out);
RPWF_API rpwf_status rpwf_speed_density(double a0, double a1, double z, double* out);
RPWF_API rpwf_status rpwf_hitting_prob(const rpwf_interval* ip, double z0, double* out);
RPWF_API rpwf_status rpwf_green_function(const rpwf_interval* ip, double x, double s,
                                         double* out);
RPWF_API rpwf_status rpwf_mean_exit_time(const rpwf_interval* ip, double z0, double* out);
RPWF_API rpwf_status rpwf_return_ratio_density(double a0, double a1, double z0, double* out);

/* ---- urn versus diffusion comparison ---- */

typedef struct rpwf_converge_config {
  rpwf_wf_params wf;
  const double* x0; /* k entries or NULL for p */
  const double* betas;
  size_t n_betas;
  const double* checkpoints; /* rescaled times, ascending */
  size_t n_checkpoints;
  size_t replicas;
  size_t wf_paths; /* 0: same as replicas */
  double dt;
  uint64_t seed;
  unsigned workers; /* 0: all cores */
} rpwf_converge_config;

typedef struct rpwf_convergence rpwf_convergence;

RPWF_API rpwf_status rpwf_converge(const rpwf_converge_config* config,
                                   rpwf_convergence** out);
RPWF_API void rpwf_convergence_free(rpwf_convergence* report);
RPWF_API size_t rpwf_convergence_marginals(const rpwf_convergence* report);
RPWF_API rpwf_status rpwf_convergence_ks(const rpwf_convergence* report, size_t beta_index,
                                         size_t checkpoint_index, size_t marginal_index,
                                         double* D, double* critical_1);
RPWF_API rpwf_status rpwf_convergence_mean_D(const rpwf_convergence* report,
                                             size_t beta_index, double* out);
RPWF_API rpwf_status rpwf_convergence_trend(const rpwf_convergence* report, int* out);
RPWF_API rpwf_status rpwf_convergence_write_json(const rpwf_convergence* report,
                                                 const char* path);
RPWF_API rpwf_status rpwf_convergence_write_samples(const rpwf_convergence* report,
                                                    size_t beta_index,
                                                    size_t checkpoint_index,
                                                    const char* path);

typedef struct rpwf_stationary_config {
  rpwf_wf_params wf;
  double beta;
  double t;
  size_t color;
  size_t replicas;
  const double* x0; /* k entries or NULL for p */
  uint64_t seed;
  unsigned workers;
} rpwf_stationary_config;

typedef struct rpwf_stationary_result {
  double D;
  double critical_1;
  double critical_5;
  size_t n_samples;
  uint64_t urn_step;
} rpwf_stationary_result;

/* One-sample KS of urn psi_color against its Beta limit. json_path may be
 * NULL; otherwise the full report is written there. */
RPWF_API rpwf_status rpwf_stationary_test(const rpwf_stationary_config* config,
                                          rpwf_stationary_result* out, const char* json_path);

/* ---- misc ---- */

/* Number of urn steps that cover rescaled time t at beta. */
RPWF_API rpwf_status rpwf_required_steps(double t, double beta, uint64_t* out);
RPWF_API rpwf_status rpwf_chi_squared(const uint64_t* counts, const double* p, size_t k,
                                      double* out);
/* Stream seed derived from (master, label, index). */
RPWF_API uint64_t rpwf_derive_seed(uint64_t master, const char* label, uint64_t index);

#ifdef __cplusplus
}
#endif

#endif /* RPWF_RPWF_H_ */
