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

// Command-line front end. Every subcommand maps to one experiment run; the
// simulator itself is reached only through the C API in qfridge.h.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qfridge.h"

namespace {

struct Options {
  std::string preset;
  std::string config;
  std::string zeta;
  std::string t_final;
  std::string out;
  std::string states;
  std::string channels;
  std::string cop_out;
  std::size_t grid_points = 0;
  unsigned threads = 0;
  std::vector<std::string> settings;
};

int exit_code(qfr_status status) {
  switch (status) {
    case QFR_OK: return 0;
    case QFR_ERR_ARGUMENT:
    case QFR_ERR_CONFIG: return 2;
    case QFR_ERR_SOLVER: return 3;
    case QFR_ERR_INVARIANT: return 4;
    default: return 1;
  }
}

int fail(qfr_status status) {
  std::fprintf(stderr, "qfridge: %s: %s\n", qfr_status_name(status), qfr_last_error());
  return exit_code(status);
}

struct ConfigHandle {
  qfr_config* ptr = nullptr;
  ~ConfigHandle() { qfr_config_free(ptr); }
};

qfr_status set(qfr_config* c, const char* key, const std::string& value) {
  return qfr_config_set(c, key, value.c_str());
}

// Builds the run configuration: preset or file first, then flag overrides.
qfr_status build_config(const Options& o, const char* run, bool sweep, ConfigHandle& cfg) {
  qfr_status s = o.config.empty()
                     ? qfr_config_from_preset(o.preset.empty() ? "steady-regime" : o.preset.c_str(), &cfg.ptr)
                     : qfr_config_from_file(o.config.c_str(), &cfg.ptr);
  if (s != QFR_OK) return s;
  if (run && (s = set(cfg.ptr, "run", run)) != QFR_OK) return s;
  for (const auto& kv : o.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "qfridge: --set expects key=value, got '%s'\n", kv.c_str());
      return QFR_ERR_CONFIG;
    }
    if ((s = set(cfg.ptr, kv.substr(0, eq).c_str(), kv.substr(eq + 1))) != QFR_OK) return s;
  }
  if (!o.zeta.empty() && (s = set(cfg.ptr, sweep ? "zeta_grid" : "zeta", o.zeta)) != QFR_OK) return s;
  if (!o.t_final.empty() && (s = set(cfg.ptr, "t_final", o.t_final)) != QFR_OK) return s;
  if (o.grid_points && (s = set(cfg.ptr, "grid_points", std::to_string(o.grid_points))) != QFR_OK) return s;
  if (o.threads && (s = set(cfg.ptr, "threads", std::to_string(o.threads))) != QFR_OK) return s;
  if (!o.out.empty() && (s = set(cfg.ptr, "output", o.out)) != QFR_OK) return s;
  return QFR_OK;
}

void print_readout(const qfr_readout& r) {
  static const char* names[] = {"c", "h", "w"};
  for (int a = 0; a < 3; ++a) {
    const char* tag = r.theta_kind[a] == QFR_TEMP_INFINITE ? " (infinite)"
                      : r.theta_kind[a] == QFR_TEMP_NEGATIVE ? " (negative)" : "";
    std::printf("theta_%s = %.12g%s  qdot_%s = %.12g\n", names[a], r.theta[a], tag, names[a], r.qdot[a]);
  }
  if (r.cop_defined) std::printf("cop = %.12g\n", r.cop);
  else std::printf("cop = undefined\n");
}

int cmd_evolve(const Options& o) {
  ConfigHandle cfg;
  if (auto s = build_config(o, "evolve", false, cfg); s != QFR_OK) return fail(s);
  qfr_evolve_report rep{};
  const auto s = qfr_run_evolve(cfg.ptr, nullptr, o.states.empty() ? nullptr : o.states.c_str(), &rep);
  if (s != QFR_OK) return fail(s);
  std::printf("samples %zu up to t = %.6g (%s)\n", rep.samples, rep.horizon,
              rep.stationary ? "stationary" : "horizon reached");
  std::printf("theta_c: initial %.12g, min %.12g at t = %.6g, final %.12g\n", rep.theta_c_initial,
              rep.theta_c_min, rep.theta_c_min_time, rep.theta_c_final);
  std::printf("steps %lld accepted, %lld rejected; max trace drift %.3g, max hermiticity drift %.3g\n",
              static_cast<long long>(rep.accepted_steps), static_cast<long long>(rep.rejected_steps),
              rep.max_trace_drift, rep.max_hermiticity_drift);
  return 0;
}

int cmd_steady(const Options& o) {
  ConfigHandle cfg;
  if (auto s = build_config(o, "steady", false, cfg); s != QFR_OK) return fail(s);
  if (!o.channels.empty()) {
    qfr_model* model = nullptr;
    auto s = qfr_model_create(cfg.ptr, &model);
    if (s == QFR_OK) s = qfr_model_write_channels(model, o.channels.c_str());
    qfr_model_free(model);
    if (s != QFR_OK) return fail(s);
  }
  qfr_readout r{};
  const auto s = qfr_run_steady(cfg.ptr, nullptr, &r);
  if (s != QFR_OK) return fail(s);
  print_readout(r);
  return 0;
}

int cmd_sweep(const Options& o, bool min_temp) {
  ConfigHandle cfg;
  const char* run = min_temp ? "min-temp" : "sweep-zeta";
  if (auto s = build_config(o, run, true, cfg); s != QFR_OK) return fail(s);
  qfr_sweep_report rep{};
  const auto s = min_temp ? qfr_run_min_temp(cfg.ptr, nullptr, &rep) : qfr_run_sweep_zeta(cfg.ptr, nullptr, &rep);
  std::printf("%zu points, %zu failed, delta_theta %s\n", rep.points, rep.failed_points,
              rep.monotone ? "monotone" : "NOT monotone");
  if (s != QFR_OK) return fail(s);
  return rep.failed_points ? 3 : 0;
}

int cmd_currents(const Options& o, bool cop) {
  ConfigHandle cfg;
  if (auto s = build_config(o, cop ? "cop" : "currents", true, cfg); s != QFR_OK) return fail(s);
  std::size_t needed = 0;
  qfr_config_get(cfg.ptr, "output", nullptr, 0, &needed);
  std::string out(needed, '\0');
  qfr_config_get(cfg.ptr, "output", out.data(), needed, &needed);
  out.resize(needed - 1);
  const char* currents_path = cop ? nullptr : out.c_str();
  const char* cop_path = cop ? out.c_str() : (o.cop_out.empty() ? nullptr : o.cop_out.c_str());
  qfr_cop_report rep{};
  const auto s = qfr_run_currents_cop(cfg.ptr, currents_path, cop_path, &rep);
  if (s != QFR_OK) return fail(s);
  for (std::size_t i = 0; i < rep.crossing_count; ++i) {
    if (rep.crossings[i] == 0)
      std::printf("zeta %.6g: COP never crosses the harmonic curve\n", rep.crossing_zeta[i]);
    else
      std::printf("zeta %.6g: %d crossing(s), first at t = %.6g\n", rep.crossing_zeta[i], rep.crossings[i],
                  rep.first_crossing_time[i]);
  }
  return rep.failed_series ? 3 : 0;
}

int cmd_show(const Options& o) {
  ConfigHandle cfg;
  if (auto s = build_config(o, nullptr, false, cfg); s != QFR_OK) return fail(s);
  std::size_t needed = 0;
  qfr_config_to_string(cfg.ptr, nullptr, 0, &needed);
  std::string text(needed, '\0');
  qfr_config_to_string(cfg.ptr, text.data(), needed, &needed);
  text.resize(needed - 1);
  char fp[17];
  qfr_config_fingerprint(cfg.ptr, fp);
  std::printf("%s# fingerprint %s\n", text.c_str(), fp);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-qubit absorption refrigerator with Kerr-anharmonic baths"};
  app.set_version_flag("--version", std::string(qfr_version()));
  app.require_subcommand(1);

  Options o;
  auto add_common = [&o](CLI::App* sub) {
    auto* preset = sub->add_option("--preset", o.preset, "transient-regime or steady-regime (default)");
    sub->add_option("--config", o.config, "key = value configuration file")->excludes(preset);
    sub->add_option("--t-final", o.t_final, "integration horizon, or 'auto'");
    sub->add_option("--grid-points", o.grid_points, "number of output samples")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "output CSV path");
    sub->add_option("--threads", o.threads, "worker threads for zeta sweeps (0: all cores)");
    sub->add_option("--set", o.settings, "extra configuration override key=value")->take_all();
  };

  auto* evolve = app.add_subcommand("evolve", "time evolution from the product Gibbs state");
  add_common(evolve);
  evolve->add_option("--zeta", o.zeta, "bath anharmonicity (number or inf)");
  evolve->add_option("--states", o.states, "also write density matrices to this CSV");

  auto* steady = app.add_subcommand("steady", "steady state from the generator null space");
  add_common(steady);
  steady->add_option("--zeta", o.zeta, "bath anharmonicity (number or inf)");
  steady->add_option("--channels", o.channels, "write the jump channels to this CSV");

  auto* sweep = app.add_subcommand("sweep-zeta", "steady cooling against anharmonicity");
  add_common(sweep);
  sweep->add_option("--zeta", o.zeta, "comma-separated zeta grid");

  auto* min_temp = app.add_subcommand("min-temp", "minimum cold temperature against anharmonicity");
  add_common(min_temp);
  min_temp->add_option("--zeta", o.zeta, "comma-separated zeta grid");

  auto* currents = app.add_subcommand("currents", "heat-current time series per zeta");
  add_common(currents);
  currents->add_option("--zeta", o.zeta, "comma-separated zeta grid");
  currents->add_option("--cop-out", o.cop_out, "also write the COP series to this CSV");

  auto* cop = app.add_subcommand("cop", "COP time series per zeta and crossings with the harmonic curve");
  add_common(cop);
  cop->add_option("--zeta", o.zeta, "comma-separated zeta grid");

  auto* show = app.add_subcommand("show-config", "print the resolved configuration and its fingerprint");
  add_common(show);
  show->add_option("--zeta", o.zeta, "bath anharmonicity (number or inf)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (evolve->parsed()) return cmd_evolve(o);
  if (steady->parsed()) return cmd_steady(o);
  if (sweep->parsed()) return cmd_sweep(o, false);
  if (min_temp->parsed()) return cmd_sweep(o, true);
  if (currents->parsed()) return cmd_currents(o, false);
  if (cop->parsed()) return cmd_currents(o, true);
  return cmd_show(o);
}
