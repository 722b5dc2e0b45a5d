// Copyright 2026 The qwalk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to libqwalk.
 *
 * Every fallible call returns a qw_status. On failure a human-readable
 * message is available from qw_last_error() until the next failing call on
 * the same thread. Objects are opaque handles created by qw_*_create /
 * qw_*_read / ... functions and released with the matching qw_*_free.
 * All quantities are SI unless the parameter name says otherwise.
 */
#ifndef QWALK_QWALK_H_
#define QWALK_QWALK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QWALK_BUILDING_LIBRARY)
#    define QWALK_API __declspec(dllexport)
#  else
#    define QWALK_API __declspec(dllimport)
#  endif
#else
#  define QWALK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qw_status {
  QW_OK = 0,
  QW_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad enum, index out of range */
  QW_ERR_DOMAIN = 2,
  QW_ERR_CONFIG = 3,
  QW_ERR_PARSE = 4,
  QW_ERR_RANK = 5,
  QW_ERR_IO = 6,
  QW_ERR_UNAVAILABLE = 7, /* value not defined for this result (e.g. dof = 0) */
  QW_ERR_INTERNAL = 8
} qw_status;

QWALK_API const char* qw_version(void);
QWALK_API const char* qw_status_name(qw_status status);
QWALK_API const char* qw_last_error(void);

/* ---- units ------------------------------------------------------------ */

typedef struct qw_constants {
  double hbar;      /* J*s */
  double dalton_kg; /* kg per Da */
} qw_constants;

/* CODATA 2006 hbar and 1 Da = 1.66054e-27 kg. */
QWALK_API qw_constants qw_default_constants(void);

/* `constants` may be NULL for the defaults in every call below. */
QWALK_API qw_status qw_mass_from_kda(const qw_constants* constants, double kda,
                                     double* kg_out);
QWALK_API qw_status qw_d_from_um2s(double um2_per_s, double* m2_per_s_out);
QWALK_API qw_status qw_d_to_um2s(double m2_per_s, double* um2_per_s_out);

/* ---- closed-form model -------------------------------------------------- */

typedef enum qw_mode {
  QW_MODE_FREE_LINE = 0,   /* D_q = hbar/2m, <dx^2> = (hbar/m) t  */
  QW_MODE_VOLUME_SWEEP = 1 /* D_q = hbar/6m, <dx^2> = (hbar/3m) t */
} qw_mode;

typedef enum qw_sql_class {
  QW_SQL_ABOVE = 0,
  QW_SQL_AT = 1,
  QW_SQL_BELOW = 2
} qw_sql_class;

QWALK_API qw_status qw_quantum_diffusion(const qw_constants* constants,
                                         double mass_kg, qw_mode mode,
                                         double* d_out);
QWALK_API qw_status qw_total_diffusion(const qw_constants* constants, double d0,
                                       double mass_kg, qw_mode mode,
                                       double* d_out);
/* Signed D0 = D - D_q; *below_out is 1 when D0 < 0. */
QWALK_API qw_status qw_classical_component(const qw_constants* constants,
                                           double d_total, double mass_kg,
                                           qw_mode mode, double* d0_out,
                                           int* below_out);
QWALK_API qw_status qw_wavepacket_width(const qw_constants* constants,
                                        double dx0, double mass_kg, double t,
                                        double* dx_out);
QWALK_API qw_status qw_sql_msd(const qw_constants* constants, double t,
                               double mass_kg, qw_mode mode, double* msd_out);
/* rel_tol < 0 selects the default (1e-9). */
QWALK_API qw_status qw_classify_vs_sql(const qw_constants* constants,
                                       double measured_msd, double t,
                                       double mass_kg, double rel_tol,
                                       qw_sql_class* class_out);

/* ---- random-walk simulation --------------------------------------------- */

typedef struct qw_sim_config {
  double d_total; /* m^2/s */
  double dt;      /* s */
  uint64_t n_steps;
  int dims; /* 1..3 */
  uint64_t n_trajectories;
  uint64_t seed;
} qw_sim_config;

typedef struct qw_ensemble qw_ensemble;

/* threads = 0 uses all hardware threads; output does not depend on it. */
QWALK_API qw_status qw_simulate_ensemble(const qw_sim_config* config,
                                         unsigned threads, qw_ensemble** out);
/* A single trajectory CSV or a directory of traj_*.csv files. */
QWALK_API qw_status qw_ensemble_read_csv(const char* path, qw_ensemble** out);
/* Writes traj_00000.csv ... into dir. */
QWALK_API qw_status qw_ensemble_write_csv(const qw_ensemble* ensemble,
                                          const char* dir);
QWALK_API size_t qw_ensemble_size(const qw_ensemble* ensemble);
QWALK_API int qw_ensemble_dims(const qw_ensemble* ensemble);
QWALK_API double qw_ensemble_dt(const qw_ensemble* ensemble);
/* Row-major positions of trajectory i (n_points * dims doubles). The
 * pointer stays valid while the ensemble lives. */
QWALK_API qw_status qw_ensemble_positions(const qw_ensemble* ensemble, size_t i,
                                          const double** data,
                                          size_t* n_points);
QWALK_API void qw_ensemble_free(qw_ensemble* ensemble);

/* ---- MSD analysis -------------------------------------------------------- */

typedef struct qw_msd qw_msd;

typedef enum qw_msd_kind {
  QW_MSD_ENSEMBLE = 0,      /* displacement from start, over trajectories */
  QW_MSD_TIME_AVERAGED = 1, /* overlapping windows of one trajectory */
  QW_MSD_POOLED = 2         /* overlapping windows of all trajectories */
} qw_msd_kind;

/* traj_index is used only by QW_MSD_TIME_AVERAGED. */
QWALK_API qw_status qw_msd_compute(const qw_ensemble* ensemble, qw_msd_kind kind,
                                   size_t traj_index, size_t max_lag,
                                   qw_msd** out);
QWALK_API qw_status qw_msd_read_csv(const char* path, qw_msd** out);
QWALK_API qw_status qw_msd_write_csv(const qw_msd* msd, const char* path);
QWALK_API size_t qw_msd_size(const qw_msd* msd);
QWALK_API qw_status qw_msd_point(const qw_msd* msd, size_t i, double* lag,
                                 double* value, double* sem, uint64_t* n);
QWALK_API void qw_msd_free(qw_msd* msd);

typedef struct qw_d_estimate {
  double d;       /* m^2/s */
  double sigma_d; /* m^2/s */
  int dims;
  size_t lags_used;
  int has_offset;
  double offset; /* m^2, valid when has_offset */
} qw_d_estimate;

/* lags_used = 0 selects min(10, curve length). */
QWALK_API qw_status qw_estimate_d(const qw_msd* msd, int dims, size_t lags_used,
                                  int fit_offset, qw_d_estimate* out);

/* ---- imaginary-time diffusion check ------------------------------------ */

typedef struct qw_pde_params {
  double mass_kg;
  double sigma0;     /* m */
  double tau;        /* s */
  size_t grid_n;     /* even, >= 16 */
  double half_width; /* m */
  size_t checkpoints;
  size_t n_time_steps; /* 0 = smallest stable count, rounded up to a
                          multiple of checkpoints */
} qw_pde_params;

typedef struct qw_pde_result qw_pde_result;

typedef struct qw_pde_summary {
  int has_slope;
  double fitted_slope;   /* m^2/s, variance growth rate */
  double expected_slope; /* hbar/m */
  double relative_error; /* fitted/expected - 1 (0 without a slope) */
  double max_mass_drift; /* relative */
  double stability_number;
  size_t n_time_steps;
  size_t trace_length;
} qw_pde_summary;

QWALK_API qw_status qw_pde_required_steps(const qw_constants* constants,
                                          const qw_pde_params* params,
                                          size_t* steps_out);
QWALK_API qw_status qw_pde_run(const qw_constants* constants,
                               const qw_pde_params* params, qw_pde_result** out);
QWALK_API qw_status qw_pde_summary_get(const qw_pde_result* result,
                                       qw_pde_summary* out);
QWALK_API qw_status qw_pde_trace_point(const qw_pde_result* result, size_t i,
                                       double* tau, double* variance);
QWALK_API qw_status qw_pde_write_trace_csv(const qw_pde_result* result,
                                           const char* path);
QWALK_API qw_status qw_pde_write_field_csv(const qw_pde_result* result,
                                           const char* path);
QWALK_API void qw_pde_result_free(qw_pde_result* result);

/* ---- hbar fit ------------------------------------------------------------ */

typedef struct qw_records qw_records;

typedef struct qw_record_view {
  const char* label;
  double mass_kg;
  double d;       /* m^2/s */
  double sigma_d; /* m^2/s */
  const char* source;
} qw_record_view;

QWALK_API qw_status qw_records_table1(const qw_constants* constants,
                                      qw_records** out);
QWALK_API qw_status qw_records_read_csv(const qw_constants* constants,
                                        const char* path, qw_records** out);
QWALK_API size_t qw_records_size(const qw_records* records);
QWALK_API qw_status qw_records_get(const qw_records* records, size_t i,
                                   qw_record_view* out);
QWALK_API void qw_records_free(qw_records* records);

typedef struct qw_fit qw_fit;

typedef struct qw_fit_summary {
  double slope;
  double sigma_slope_analytic;
  int has_scaled; /* 0 when dof = 0 */
  double sigma_slope_scaled;
  double chi2;
  size_t dof;
  size_t n_points;
  int has_chi2_reduced;
  double chi2_reduced;
  int has_intercept;
  double intercept;
  double sigma_intercept;
} qw_fit_summary;

typedef struct qw_residual_view {
  const char* label;
  double x;
  double y;
  double yhat;
  double normalized;
} qw_residual_view;

/* Fits D against 1/(6m); through_origin != 0 for the one-parameter model. */
QWALK_API qw_status qw_fit_records(const qw_records* records, int through_origin,
                                   qw_fit** out);
QWALK_API qw_status qw_fit_points(const double* x, const double* y,
                                  const double* sigma, size_t n,
                                  int through_origin, qw_fit** out);
QWALK_API qw_status qw_fit_summary_get(const qw_fit* fit, qw_fit_summary* out);
QWALK_API size_t qw_fit_residual_count(const qw_fit* fit);
QWALK_API qw_status qw_fit_residual(const qw_fit* fit, size_t i,
                                    qw_residual_view* out);
QWALK_API qw_status qw_fit_write_report(const qw_fit* fit, const char* json_path);
/* fit_points.csv and fit_line.csv inside dir. */
QWALK_API qw_status qw_fit_write_plot_bundle(const qw_fit* fit, const char* dir);
QWALK_API void qw_fit_free(qw_fit* fit);

/* ---- hbar round trip ----------------------------------------------------- */

typedef struct qw_roundtrip_params {
  double hbar;
  const double* masses_kda; /* NULL selects the five tabulated masses */
  size_t n_masses;
  uint64_t n_trajectories;
  uint64_t n_steps;
  double dt;
  uint64_t seed;
  size_t max_lag;
  size_t lags_used;
  unsigned threads;
} qw_roundtrip_params;

/* Defaults: CODATA hbar, 500 x 2000 steps, dt = 0.01 s, seed 1, max_lag 10,
 * lags_used 1. */
QWALK_API qw_roundtrip_params qw_roundtrip_default_params(void);

typedef struct qw_roundtrip qw_roundtrip;

typedef struct qw_roundtrip_mass {
  double mass_kda;
  double d_true;
  double d_est;
  double sigma_d;
  uint64_t seed;
} qw_roundtrip_mass;

QWALK_API qw_status qw_roundtrip_run(const qw_roundtrip_params* params,
                                     qw_roundtrip** out);
QWALK_API size_t qw_roundtrip_mass_count(const qw_roundtrip* rt);
QWALK_API qw_status qw_roundtrip_mass_get(const qw_roundtrip* rt, size_t i,
                                          qw_roundtrip_mass* out);
/* Borrowed handle to the MSD curve of mass i; owned by rt. */
QWALK_API const qw_msd* qw_roundtrip_msd(const qw_roundtrip* rt, size_t i);
/* Borrowed handle to the final fit; owned by rt. */
QWALK_API const qw_fit* qw_roundtrip_fit(const qw_roundtrip* rt);
QWALK_API qw_status qw_roundtrip_errors(const qw_roundtrip* rt,
                                        double* relative_error,
                                        double* normalized_error);
QWALK_API void qw_roundtrip_free(qw_roundtrip* rt);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QWALK_QWALK_H_ */
