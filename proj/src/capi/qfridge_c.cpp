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

#include "qfridge.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <string>

#include "qfridge/experiments.hpp"

using namespace qfridge;

struct qfr_config {
  ExperimentConfig config;
};

struct qfr_model {
  Generator gen;
};

namespace {

thread_local std::string last_error;

qfr_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::argument: return QFR_ERR_ARGUMENT;
    case ErrorKind::config: return QFR_ERR_CONFIG;
    case ErrorKind::solver: return QFR_ERR_SOLVER;
    case ErrorKind::invariant: return QFR_ERR_INVARIANT;
    case ErrorKind::io: return QFR_ERR_IO;
  }
  return QFR_ERR_INTERNAL;
}

template <typename Fn>
qfr_status guarded(Fn&& fn) {
  try {
    fn();
    return QFR_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return QFR_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QFR_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorKind::argument, std::string(what) + " must not be NULL");
}

Mat8 read_state(const double* rho) {
  Mat8 m;
  for (int k = 0; k < kDim * kDim; ++k) m.data()[k] = cplx(rho[2 * k], rho[2 * k + 1]);
  return m;
}

void write_state(const Mat8& m, double* rho) {
  for (int k = 0; k < kDim * kDim; ++k) {
    rho[2 * k] = m.data()[k].real();
    rho[2 * k + 1] = m.data()[k].imag();
  }
}

Anharmonicity zeta_from(double zeta) {
  return std::isinf(zeta) && zeta > 0 ? Anharmonicity::harmonic() : Anharmonicity::finite(zeta);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::io, "failed writing '" + path + "'");
}

std::string output_path(const qfr_config* c, const char* override_path) {
  const std::string path = override_path ? override_path : c->config.output;
  if (path.empty()) throw Error(ErrorKind::config, "no output path configured");
  return path;
}

void copy_out(const std::string& text, char* buffer, size_t capacity, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (buffer && capacity > 0) {
    const size_t n = std::min(capacity - 1, text.size());
    std::memcpy(buffer, text.data(), n);
    buffer[n] = '\0';
  }
}

void fill_readout(const ThermoReadout& r, qfr_readout* out) {
  for (int a = 0; a < 3; ++a) {
    out->theta[a] = r.theta[a].value;
    out->theta_kind[a] = static_cast<int>(r.theta[a].kind);
    out->coherence[a] = r.theta[a].coherence;
    out->qdot[a] = r.qdot[a];
  }
  out->cop_defined = r.cop.has_value();
  out->cop = r.cop.value_or(std::numeric_limits<double>::quiet_NaN());
}

void fill_sweep(const SweepResult& r, qfr_sweep_report* report) {
  if (!report) return;
  report->points = r.points.size();
  report->failed_points = 0;
  for (const auto& p : r.points) report->failed_points += p.ok ? 0 : 1;
  report->monotone = r.monotone;
}

void check_sweep(const SweepResult& r) {
  if (r.monotone) return;
  std::string msg = "anharmonicity sweep is not monotone";
  for (const auto& v : r.violations) msg += "; " + v;
  throw Error(ErrorKind::invariant, msg);
}

}  // namespace

extern "C" {

const char* qfr_version(void) { return "0.1.0"; }

const char* qfr_last_error(void) { return last_error.c_str(); }

const char* qfr_status_name(qfr_status status) {
  switch (status) {
    case QFR_OK: return "ok";
    case QFR_ERR_ARGUMENT: return "argument error";
    case QFR_ERR_CONFIG: return "config error";
    case QFR_ERR_SOLVER: return "solver error";
    case QFR_ERR_INVARIANT: return "invariant violation";
    case QFR_ERR_IO: return "i/o error";
    case QFR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

qfr_status qfr_config_from_preset(const char* name, qfr_config** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = new qfr_config{preset_config(name)};
  });
}

qfr_status qfr_config_from_file(const char* path, qfr_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new qfr_config{load_config(path)};
  });
}

qfr_status qfr_config_from_string(const char* text, qfr_config** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new qfr_config{parse_config(text)};
  });
}

qfr_status qfr_config_set(qfr_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    ExperimentConfig updated = config->config;
    try {
      apply_setting(updated, key, value);
    } catch (const Error& e) {
      throw Error(ErrorKind::config, e.what());
    }
    updated.validate();
    config->config = std::move(updated);
  });
}

qfr_status qfr_config_to_string(const qfr_config* config, char* buffer, size_t capacity,
                                size_t* needed) {
  return guarded([&] {
    require(config, "config");
    copy_out(to_text(config->config), buffer, capacity, needed);
  });
}

qfr_status qfr_config_get(const qfr_config* config, const char* key, char* buffer, size_t capacity,
                          size_t* needed) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    const std::string text = to_text(config->config);
    const std::string prefix = std::string(key) + " = ";
    std::size_t pos = 0;
    while (pos < text.size()) {
      const std::size_t end = text.find('\n', pos);
      const std::string line = text.substr(pos, end - pos);
      if (line.rfind(prefix, 0) == 0) {
        copy_out(line.substr(prefix.size()), buffer, capacity, needed);
        return;
      }
      if (end == std::string::npos) break;
      pos = end + 1;
    }
    throw Error(ErrorKind::config, "unknown config key '" + std::string(key) + "'");
  });
}

qfr_status qfr_config_fingerprint(const qfr_config* config, char out[17]) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    const std::string fp = config_fingerprint(config->config);
    std::memcpy(out, fp.c_str(), 17);
  });
}

void qfr_config_free(qfr_config* config) { delete config; }

qfr_status qfr_run_evolve(const qfr_config* config, const char* out_path, const char* states_path,
                          qfr_evolve_report* report) {
  return guarded([&] {
    require(config, "config");
    const std::string path = output_path(config, out_path);
    const EvolutionRun run = run_evolution(config->config);
    {
      auto out = open_output(path);
      write_evolution_csv(out, run);
      finish(out, path);
    }
    if (states_path) {
      auto out = open_output(states_path);
      write_states_csv(out, run.trajectory);
      finish(out, states_path);
    }
    if (report) {
      const auto& tr = run.trajectory;
      report->samples = tr.times.size();
      report->horizon = run.horizon;
      report->theta_c_initial = run.readouts.front().theta[0].value;
      report->theta_c_final = run.readouts.back().theta[0].value;
      report->theta_c_min = report->theta_c_initial;
      report->theta_c_min_time = tr.times.front();
      for (std::size_t i = 0; i < run.readouts.size(); ++i) {
        if (run.readouts[i].theta[0].value < report->theta_c_min) {
          report->theta_c_min = run.readouts[i].theta[0].value;
          report->theta_c_min_time = tr.times[i];
        }
      }
      report->accepted_steps = tr.diagnostics.accepted;
      report->rejected_steps = tr.diagnostics.rejected;
      report->max_trace_drift = tr.diagnostics.max_trace_drift;
      report->max_hermiticity_drift = tr.diagnostics.max_hermiticity_drift;
      report->stationary = tr.diagnostics.stationary;
    }
  });
}

qfr_status qfr_run_steady(const qfr_config* config, const char* out_path, qfr_readout* readout) {
  return guarded([&] {
    require(config, "config");
    const SteadyRun run = run_steady(config->config);
    if (out_path || !config->config.output.empty()) {
      const std::string path = output_path(config, out_path);
      auto out = open_output(path);
      out << kEvolutionHeader << '\n';
      write_readout_row(out, std::numeric_limits<double>::infinity(), run.readout);
      finish(out, path);
    }
    if (readout) fill_readout(run.readout, readout);
  });
}

qfr_status qfr_run_sweep_zeta(const qfr_config* config, const char* out_path,
                              qfr_sweep_report* report) {
  return guarded([&] {
    require(config, "config");
    const std::string path = output_path(config, out_path);
    const SweepResult r = run_zeta_sweep(config->config);
    auto out = open_output(path);
    write_sweep_csv(out, r);
    finish(out, path);
    fill_sweep(r, report);
    check_sweep(r);
  });
}

qfr_status qfr_run_min_temp(const qfr_config* config, const char* out_path,
                            qfr_sweep_report* report) {
  return guarded([&] {
    require(config, "config");
    const std::string path = output_path(config, out_path);
    const SweepResult r = run_min_temp_sweep(config->config);
    auto out = open_output(path);
    write_sweep_csv(out, r);
    finish(out, path);
    fill_sweep(r, report);
    check_sweep(r);
  });
}

qfr_status qfr_run_currents_cop(const qfr_config* config, const char* currents_path,
                                const char* cop_path, qfr_cop_report* report) {
  return guarded([&] {
    require(config, "config");
    const CurrentsResult r = run_currents_and_cop(config->config);
    if (currents_path) {
      auto out = open_output(currents_path);
      write_currents_csv(out, r);
      finish(out, currents_path);
    }
    if (cop_path) {
      auto out = open_output(cop_path);
      write_cop_csv(out, r);
      finish(out, cop_path);
    }
    if (report) {
      *report = qfr_cop_report{};
      report->series = r.series.size();
      for (const auto& s : r.series) report->failed_series += s.ok ? 0 : 1;
      for (const auto& c : r.crossings) {
        if (report->crossing_count >= 16) break;
        const size_t i = report->crossing_count++;
        report->crossing_zeta[i] = c.zeta.value();
        report->crossings[i] = static_cast<int>(c.times.size());
        report->first_crossing_time[i] =
            c.times.empty() ? std::numeric_limits<double>::quiet_NaN() : c.times.front();
      }
    }
  });
}

qfr_status qfr_model_create(const qfr_config* config, qfr_model** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    config->config.validate();
    *out = new qfr_model{build_generator(config->config.fridge, config->config.baths)};
  });
}

void qfr_model_free(qfr_model* model) { delete model; }

qfr_status qfr_model_initial_state(const qfr_model* model, double rho[128]) {
  return guarded([&] {
    require(model, "model");
    require(rho, "rho");
    write_state(initial_product_gibbs(model->gen.fridge, model->gen.baths).matrix(), rho);
  });
}

qfr_status qfr_model_steady_state(const qfr_model* model, double rho[128]) {
  return guarded([&] {
    require(model, "model");
    require(rho, "rho");
    write_state(steady_state(model->gen).matrix(), rho);
  });
}

qfr_status qfr_model_readout(const qfr_model* model, const double rho[128], qfr_readout* out) {
  return guarded([&] {
    require(model, "model");
    require(rho, "rho");
    require(out, "out");
    fill_readout(thermo_readout(model->gen, read_state(rho)), out);
  });
}

qfr_status qfr_model_evolve(const qfr_model* model, const double rho0[128], const double* times,
                            size_t count, double* states) {
  return guarded([&] {
    require(model, "model");
    require(rho0, "rho0");
    require(times, "times");
    require(states, "states");
    const DensityMatrix start = DensityMatrix::checked(read_state(rho0));
    const Trajectory tr = evolve(model->gen, start, std::span<const double>(times, count));
    for (std::size_t i = 0; i < tr.states.size(); ++i) write_state(tr.states[i].matrix(), states + 128 * i);
  });
}

qfr_status qfr_model_generator(const qfr_model* model, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const Mat64& l = model->gen.matrix;
    for (int k = 0; k < kSuperDim * kSuperDim; ++k) {
      out[2 * k] = l.data()[k].real();
      out[2 * k + 1] = l.data()[k].imag();
    }
  });
}

qfr_status qfr_model_residual(const qfr_model* model, const double rho[128], double* residual) {
  return guarded([&] {
    require(model, "model");
    require(rho, "rho");
    require(residual, "residual");
    *residual = stationarity_residual(model->gen, read_state(rho));
  });
}

qfr_status qfr_model_slowest_rate(const qfr_model* model, double* rate) {
  return guarded([&] {
    require(model, "model");
    require(rate, "rate");
    *rate = slowest_relaxation_rate(model->gen.matrix);
  });
}

qfr_status qfr_model_write_channels(const qfr_model* model, const char* path) {
  return guarded([&] {
    require(model, "model");
    require(path, "path");
    auto out = open_output(path);
    write_channels_csv(out, model->gen.channels);
    finish(out, path);
  });
}

qfr_status qfr_occupation(double omega, double temperature, double zeta, double* value,
                          double* truncation_bound, int64_t* terms_used) {
  return guarded([&] {
    require(value, "value");
    const OccupationResult r = compute_occupation(temperature, zeta_from(zeta), omega);
    *value = r.value;
    if (truncation_bound) *truncation_bound = r.truncation_bound;
    if (terms_used) *terms_used = r.terms_used;
  });
}

qfr_status qfr_decay_rate(double omega, double temperature, double kappa, double zeta,
                          double omega0, double cutoff, double* rate) {
  return guarded([&] {
    require(rate, "rate");
    BathSpec bath{temperature, kappa, zeta_from(zeta), cutoff, omega0};
    bath.validate();
    *rate = decay_rate(bath, omega);
  });
}

qfr_status qfr_virtual_temperature(double omega_h, double omega_w, double t_h, double t_w,
                                   double* out) {
  return guarded([&] {
    require(out, "out");
    *out = virtual_temperature(omega_h, omega_w, t_h, t_w)
               .value_or(std::numeric_limits<double>::infinity());
  });
}

}  // extern "C"
