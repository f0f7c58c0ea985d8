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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfridge/observables.hpp"

namespace qfridge {

enum class RunKind { evolve, steady, sweep_zeta, min_temp_sweep, currents, cop };

RunKind parse_run_kind(std::string_view text);
const char* run_kind_name(RunKind kind);

/// One experiment: the refrigerator, its three baths and what to compute.
/// Bath omega0 always equals the energy of the qubit the bath couples to.
struct ExperimentConfig {
  std::string preset;
  RunKind kind = RunKind::evolve;
  RefrigeratorSpec fridge;
  BathSet baths;
  std::vector<Anharmonicity> zeta_grid;
  std::optional<double> t_final;       // nullopt: 50 / slowest relaxation rate
  std::optional<double> early_window;  // nullopt: ten exchange periods pi/g
  std::size_t grid_points = 4000;
  unsigned threads = 0;                // 0: hardware concurrency
  std::string output;

  void validate() const;
  /// Baths with every zeta replaced by `zeta`.
  BathSet baths_with(Anharmonicity zeta) const;
};

/// Named parameter sets: "transient-regime" and "steady-regime".
ExperimentConfig preset_config(std::string_view name);
std::vector<std::string> preset_names();

/// Flat `key = value` text; '#' starts a comment. Unknown keys are errors.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = preset_config("steady-regime"));
ExperimentConfig load_config(const std::string& path);
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);
/// Canonical text form; parse_config(to_text(c)) reproduces c.
std::string to_text(const ExperimentConfig& config);
/// FNV-1a 64-bit hash of to_text(config), as 16 hex digits.
std::string config_fingerprint(const ExperimentConfig& config);

std::vector<Anharmonicity> default_zeta_grid();

/// Uniform samples on [0, early_window] followed by log-spaced samples up to
/// t_final; `points` in total, strictly increasing, starting at 0.
std::vector<double> make_time_grid(double t_final, std::size_t points, double early_window);

// ---------------------------------------------------------------- runs

struct EvolutionRun {
  Anharmonicity zeta = Anharmonicity::harmonic();
  double horizon = 0.0;
  Trajectory trajectory;
  std::vector<ThermoReadout> readouts;
};

/// Time evolution from the product Gibbs state at the configured zeta
/// (baths[cold].zeta). With an automatic horizon the run stops once
/// ||L vec rho|| < 1e-12 for three consecutive samples.
EvolutionRun run_evolution(const ExperimentConfig& config);

struct SteadyRun {
  Anharmonicity zeta = Anharmonicity::harmonic();
  DensityMatrix state;
  ThermoReadout readout;
  double residual = 0.0;
};

SteadyRun run_steady(const ExperimentConfig& config);

struct SweepPoint {
  Anharmonicity zeta = Anharmonicity::harmonic();
  bool ok = false;
  std::string error;
  double theta_ss = 0.0;
  double delta_theta = 0.0;                 // theta_ss - T_c
  std::optional<double> theta_min;          // min-temp sweeps only
  std::optional<double> theta_min_time;
  std::optional<bool> min_at_steady;
  double qdot_c_ss = 0.0;
  double qdot_h_ss = 0.0;
  double qdot_w_ss = 0.0;
  std::optional<double> cop_ss;
};

struct SweepResult {
  RunKind kind = RunKind::sweep_zeta;
  std::vector<SweepPoint> points;  // ascending zeta
  bool monotone = true;            // delta_theta non-decreasing in zeta
  std::vector<std::string> violations;
  bool all_ok() const;
};

/// Sets `monotone` and lists violations over the successful points.
void check_monotone(SweepResult& result);

SweepResult run_zeta_sweep(const ExperimentConfig& config);
SweepResult run_min_temp_sweep(const ExperimentConfig& config);

struct CurrentSeries {
  Anharmonicity zeta = Anharmonicity::harmonic();
  bool ok = false;
  std::string error;
  std::vector<double> times;
  std::vector<std::array<double, 3>> qdot;
  std::vector<std::optional<double>> cop;
};

struct CopCrossing {
  Anharmonicity zeta = Anharmonicity::harmonic();
  /// Times where cop(zeta) - cop(harmonic) changes sign (linear interpolation).
  std::vector<double> times;
  /// Sign of cop(zeta) - cop(harmonic) at the first sample.
  int initial_sign = 0;
};

struct CurrentsResult {
  std::vector<CurrentSeries> series;    // ascending zeta
  std::vector<CopCrossing> crossings;   // finite zeta vs the harmonic series
};

/// Heat-current and COP time series on one common grid for every zeta.
CurrentsResult run_currents_and_cop(const ExperimentConfig& config);

// ---------------------------------------------------------------- CSV

inline constexpr std::string_view kEvolutionHeader =
    "t,theta_c,theta_h,theta_w,qdot_c,qdot_h,qdot_w,cop,coh_c,coh_h,coh_w";
inline constexpr std::string_view kSweepHeader =
    "zeta,theta_ss,delta_theta,theta_min,min_at_steady,qdot_c_ss,qdot_w_ss,cop_ss";

void write_readout_row(std::ostream& out, double t, const ThermoReadout& readout);
void write_evolution_csv(std::ostream& out, const EvolutionRun& run);
/// Header t then re_i_j,im_i_j for every element in column-major order.
void write_states_csv(std::ostream& out, const Trajectory& trajectory);
std::vector<std::pair<double, Mat8>> read_states_csv(std::istream& in);
void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_currents_csv(std::ostream& out, const CurrentsResult& result);
void write_cop_csv(std::ostream& out, const CurrentsResult& result);

/// Formats a double with round-trip precision; "inf"/"-inf"/"nan" for
/// non-finite values.
std::string format_number(double x);

}  // namespace qfridge
