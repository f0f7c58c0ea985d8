// Copyright 2026 The qfridge Authors
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
 * C interface to the qfridge three-qubit absorption refrigerator simulator.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns a qfr_status; on failure qfr_last_error()
 * describes the problem (thread-local, valid until the next failing call on
 * the same thread).
 *
 * Density matrices cross the boundary as 128 doubles: the 64 entries of the
 * 8x8 matrix in column-major order, each as (real, imag). Basis index
 * 4*n_c + 2*n_h + n_w labels |n_c n_h n_w>.
 *
 * Anharmonicity: pass INFINITY (from <math.h>) for harmonic baths.
 */

#ifndef QFRIDGE_H
#define QFRIDGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(QFRIDGE_BUILDING)
#define QFR_API __attribute__((visibility("default")))
#else
#define QFR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values 2..4 double as CLI exit codes. */
typedef enum qfr_status {
  QFR_OK = 0,
  QFR_ERR_ARGUMENT = 1,
  QFR_ERR_CONFIG = 2,
  QFR_ERR_SOLVER = 3,
  QFR_ERR_INVARIANT = 4,
  QFR_ERR_IO = 5,
  QFR_ERR_INTERNAL = 6
} qfr_status;

typedef enum qfr_temperature_kind {
  QFR_TEMP_FINITE = 0,
  QFR_TEMP_INFINITE = 1,
  QFR_TEMP_NEGATIVE = 2
} qfr_temperature_kind;

typedef struct qfr_config qfr_config;
typedef struct qfr_model qfr_model;

/* Qubit order in every 3-element array: cold, hot, work. */
typedef struct qfr_readout {
  double theta[3];
  int theta_kind[3]; /* qfr_temperature_kind */
  double coherence[3];
  double qdot[3];
  double cop;
  int cop_defined;
} qfr_readout;

typedef struct qfr_evolve_report {
  size_t samples;
  double horizon;
  double theta_c_initial;
  double theta_c_min;
  double theta_c_min_time;
  double theta_c_final;
  int64_t accepted_steps;
  int64_t rejected_steps;
  double max_trace_drift;
  double max_hermiticity_drift;
  int stationary; /* stopped by the steady-state detector */
} qfr_evolve_report;

typedef struct qfr_sweep_report {
  size_t points;
  size_t failed_points;
  int monotone;
} qfr_sweep_report;

typedef struct qfr_cop_report {
  size_t series;
  size_t failed_series;
  /* Crossing of each finite-zeta COP curve with the harmonic one, in the
     sweep's ascending zeta order; at most 16 entries are filled. */
  size_t crossing_count;
  double crossing_zeta[16];
  double first_crossing_time[16];
  int crossings[16];
} qfr_cop_report;

QFR_API const char* qfr_version(void);
QFR_API const char* qfr_last_error(void);
QFR_API const char* qfr_status_name(qfr_status status);

/* ---- configuration ---------------------------------------------------- */

/* Presets: "transient-regime", "steady-regime". */
QFR_API qfr_status qfr_config_from_preset(const char* name, qfr_config** out);
QFR_API qfr_status qfr_config_from_file(const char* path, qfr_config** out);
/* Parses key = value text on top of the steady-regime preset. */
QFR_API qfr_status qfr_config_from_string(const char* text, qfr_config** out);
QFR_API qfr_status qfr_config_set(qfr_config* config, const char* key, const char* value);
/* Canonical text; copies at most `capacity` bytes including the terminator
   and stores the required size (with terminator) in *needed. */
QFR_API qfr_status qfr_config_to_string(const qfr_config* config, char* buffer, size_t capacity,
                                        size_t* needed);
/* Value of one key as it appears in the canonical text; same buffer
   convention as qfr_config_to_string. */
QFR_API qfr_status qfr_config_get(const qfr_config* config, const char* key, char* buffer,
                                  size_t capacity, size_t* needed);
QFR_API qfr_status qfr_config_fingerprint(const qfr_config* config, char out[17]);
QFR_API void qfr_config_free(qfr_config* config);

/* ---- experiment runs (CSV output) -------------------------------------- */

/* `out_path` NULL means the config's output path. `states_path` may be NULL. */
QFR_API qfr_status qfr_run_evolve(const qfr_config* config, const char* out_path,
                                  const char* states_path, qfr_evolve_report* report);
QFR_API qfr_status qfr_run_steady(const qfr_config* config, const char* out_path,
                                  qfr_readout* readout);
QFR_API qfr_status qfr_run_sweep_zeta(const qfr_config* config, const char* out_path,
                                      qfr_sweep_report* report);
QFR_API qfr_status qfr_run_min_temp(const qfr_config* config, const char* out_path,
                                    qfr_sweep_report* report);
/* Writes the heat-current series to `currents_path` and the COP series to
   `cop_path`; either may be NULL. */
QFR_API qfr_status qfr_run_currents_cop(const qfr_config* config, const char* currents_path,
                                        const char* cop_path, qfr_cop_report* report);

/* ---- model-level access ---------------------------------------------- */

QFR_API qfr_status qfr_model_create(const qfr_config* config, qfr_model** out);
QFR_API void qfr_model_free(qfr_model* model);
QFR_API qfr_status qfr_model_initial_state(const qfr_model* model, double rho[128]);
QFR_API qfr_status qfr_model_steady_state(const qfr_model* model, double rho[128]);
QFR_API qfr_status qfr_model_readout(const qfr_model* model, const double rho[128],
                                     qfr_readout* out);
/* States at `times` (strictly increasing, >= 0) written to states[128*i]. */
QFR_API qfr_status qfr_model_evolve(const qfr_model* model, const double rho0[128],
                                    const double* times, size_t count, double* states);
/* Column-major 64x64 generator, (real, imag) pairs: 8192 doubles. */
QFR_API qfr_status qfr_model_generator(const qfr_model* model, double* out);
QFR_API qfr_status qfr_model_residual(const qfr_model* model, const double rho[128],
                                      double* residual);
QFR_API qfr_status qfr_model_slowest_rate(const qfr_model* model, double* rate);
/* CSV with header alpha,omega,rate,op_norm. */
QFR_API qfr_status qfr_model_write_channels(const qfr_model* model, const char* path);

/* ---- bath and thermodynamic helpers ----------------------------------- */

QFR_API qfr_status qfr_occupation(double omega, double temperature, double zeta, double* value,
                                  double* truncation_bound, int64_t* terms_used);
QFR_API qfr_status qfr_decay_rate(double omega, double temperature, double kappa, double zeta,
                                  double omega0, double cutoff, double* rate);
/* Stores INFINITY when the virtual temperature diverges. */
QFR_API qfr_status qfr_virtual_temperature(double omega_h, double omega_w, double t_h, double t_w,
                                           double* out);

#ifdef __cplusplus
}
#endif

#endif /* QFRIDGE_H */
