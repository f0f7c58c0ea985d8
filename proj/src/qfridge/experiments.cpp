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

#include "qfridge/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

namespace qfridge {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(x)) {
    throw Error(ErrorKind::config,
                "config key '" + std::string(key) + "': '" + std::string(text) + "' is not a number");
  }
  return x;
}

std::size_t parse_count(std::string_view key, std::string_view text) {
  text = trim(text);
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::config, "config key '" + std::string(key) + "': '" + std::string(text) +
                                       "' is not a non-negative integer");
  }
  return n;
}

Anharmonicity parse_zeta(std::string_view key, std::string_view text) {
  try {
    return Anharmonicity::parse(trim(text));
  } catch (const Error& e) {
    throw Error(ErrorKind::config, "config key '" + std::string(key) + "': " + e.what());
  }
}

std::vector<Anharmonicity> parse_zeta_list(std::string_view key, std::string_view text) {
  std::vector<Anharmonicity> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) out.push_back(parse_zeta(key, item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw Error(ErrorKind::config, "config key '" + std::string(key) + "' is empty");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Runs fn(i) for i in [0, n) on a bounded pool; fn must not throw.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

double default_early_window(const RefrigeratorSpec& fridge, double horizon) {
  if (fridge.g > 0.0) return std::min(horizon, 10.0 * std::numbers::pi / fridge.g);
  return horizon / 100.0;
}

double auto_horizon(const Generator& gen) {
  const double rate = slowest_relaxation_rate(gen.matrix);
  if (rate <= 0.0) {
    throw Error(ErrorKind::config,
                "no dissipation: the automatic time horizon needs a relaxing generator; set t_final");
  }
  return 50.0 / rate;
}

std::string zeta_context(Anharmonicity zeta) { return "zeta=" + zeta.to_string() + ": "; }

}  // namespace

RunKind parse_run_kind(std::string_view text) {
  text = trim(text);
  if (text == "evolve") return RunKind::evolve;
  if (text == "steady") return RunKind::steady;
  if (text == "sweep-zeta") return RunKind::sweep_zeta;
  if (text == "min-temp" || text == "min-temp-sweep") return RunKind::min_temp_sweep;
  if (text == "currents") return RunKind::currents;
  if (text == "cop") return RunKind::cop;
  throw Error(ErrorKind::config, "unknown run kind '" + std::string(text) + "'");
}

const char* run_kind_name(RunKind kind) {
  switch (kind) {
    case RunKind::evolve: return "evolve";
    case RunKind::steady: return "steady";
    case RunKind::sweep_zeta: return "sweep-zeta";
    case RunKind::min_temp_sweep: return "min-temp";
    case RunKind::currents: return "currents";
    case RunKind::cop: return "cop";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  try {
    fridge.validate();
    for (const auto& b : baths) b.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::config, e.what());
  }
  for (Qubit q : kQubits) {
    if (baths[index_of(q)].omega0 != fridge.energy(q)) {
      throw Error(ErrorKind::config, std::string("bath omega0 for qubit ") + label_of(q) +
                                         " must equal the qubit energy");
    }
  }
  if (zeta_grid.empty()) throw Error(ErrorKind::config, "zeta grid is empty");
  if (t_final && !(*t_final > 0.0)) throw Error(ErrorKind::config, "t_final must be > 0");
  if (early_window && !(*early_window > 0.0)) throw Error(ErrorKind::config, "early_window must be > 0");
  if (grid_points < 4) throw Error(ErrorKind::config, "grid_points must be at least 4");
}

BathSet ExperimentConfig::baths_with(Anharmonicity zeta) const {
  BathSet out = baths;
  for (auto& b : out) b.zeta = zeta;
  return out;
}

std::vector<Anharmonicity> default_zeta_grid() {
  return {Anharmonicity::finite(10),   Anharmonicity::finite(20),   Anharmonicity::finite(50),
          Anharmonicity::finite(100),  Anharmonicity::finite(200),  Anharmonicity::finite(400),
          Anharmonicity::finite(1000), Anharmonicity::finite(1e4),  Anharmonicity::harmonic()};
}

ExperimentConfig preset_config(std::string_view name) {
  ExperimentConfig c;
  c.preset = std::string(name);
  c.fridge = RefrigeratorSpec{1.0, 2.0, 1.0, 0.0};
  const std::array<double, 3> temps{1.0, 1.0, 2.0};
  // Couplings are quoted in units of the qubit energy omega0.
  std::array<double, 3> kappa_units{};
  if (name == "transient-regime") {
    c.fridge.g = 0.8;
    kappa_units = {1e-4, 1e-5, 1e-3};
  } else if (name == "steady-regime") {
    c.fridge.g = 0.1;
    kappa_units = {1e-4, 1e-4, 1e-4};
  } else {
    throw Error(ErrorKind::config, "unknown preset '" + std::string(name) +
                                       "' (available: transient-regime, steady-regime)");
  }
  for (Qubit q : kQubits) {
    const int a = index_of(q);
    BathSpec& b = c.baths[a];
    b.temperature = temps[a];
    b.omega0 = c.fridge.energy(q);
    b.kappa = kappa_units[a] * b.omega0;
    b.cutoff = 5000.0;
    b.zeta = Anharmonicity::harmonic();
  }
  c.zeta_grid = default_zeta_grid();
  c.output = "out.csv";
  return c;
}

std::vector<std::string> preset_names() { return {"transient-regime", "steady-regime"}; }

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  auto bath = [&](char label) -> BathSpec& { return c.baths[index_of(parse_qubit(std::string_view(&label, 1)))]; };
  if (key == "run") {
    c.kind = parse_run_kind(value);
  } else if (key == "preset") {
    const auto kind = c.kind;
    const auto output = c.output;
    c = preset_config(value);
    c.kind = kind;
    c.output = output;
  } else if (key == "omega_c" || key == "omega_h" || key == "omega_w") {
    const double x = parse_double(key, value);
    const Qubit q = parse_qubit(key.substr(6));
    if (q == Qubit::cold) c.fridge.omega_c = x;
    if (q == Qubit::hot) c.fridge.omega_h = x;
    if (q == Qubit::work) c.fridge.omega_w = x;
    c.baths[index_of(q)].omega0 = x;
  } else if (key == "g") {
    c.fridge.g = parse_double(key, value);
  } else if (key == "kappa_c" || key == "kappa_h" || key == "kappa_w") {
    bath(key.back()).kappa = parse_double(key, value);
  } else if (key == "T_c" || key == "T_h" || key == "T_w") {
    bath(key.back()).temperature = parse_double(key, value);
  } else if (key == "zeta_c" || key == "zeta_h" || key == "zeta_w") {
    bath(key.back()).zeta = parse_zeta(key, value);
  } else if (key == "zeta") {
    const auto z = parse_zeta(key, value);
    for (auto& b : c.baths) b.zeta = z;
  } else if (key == "cutoff") {
    const double x = parse_double(key, value);
    for (auto& b : c.baths) b.cutoff = x;
  } else if (key == "zeta_grid") {
    c.zeta_grid = parse_zeta_list(key, value);
  } else if (key == "t_final") {
    c.t_final = value == "auto" ? std::nullopt : std::optional<double>(parse_double(key, value));
  } else if (key == "early_window") {
    c.early_window = value == "auto" ? std::nullopt : std::optional<double>(parse_double(key, value));
  } else if (key == "grid_points") {
    c.grid_points = parse_count(key, value);
  } else if (key == "threads") {
    c.threads = static_cast<unsigned>(parse_count(key, value));
  } else if (key == "output") {
    c.output = std::string(value);
  } else {
    throw Error(ErrorKind::config, "unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  ExperimentConfig c = std::move(base);
  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::config, "config line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      apply_setting(c, line.substr(0, eq), line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorKind::config, "config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_text(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "# qfridge experiment configuration (natural units, hbar = k_B = 1)\n";
  if (!c.preset.empty()) os << "preset = " << c.preset << "\n";
  os << "run = " << run_kind_name(c.kind) << "\n";
  os << "omega_c = " << format_number(c.fridge.omega_c) << "\n";
  os << "omega_h = " << format_number(c.fridge.omega_h) << "\n";
  os << "omega_w = " << format_number(c.fridge.omega_w) << "\n";
  os << "g = " << format_number(c.fridge.g) << "\n";
  for (Qubit q : kQubits) os << "kappa_" << label_of(q) << " = " << format_number(c.baths[index_of(q)].kappa) << "\n";
  for (Qubit q : kQubits) os << "T_" << label_of(q) << " = " << format_number(c.baths[index_of(q)].temperature) << "\n";
  for (Qubit q : kQubits) os << "zeta_" << label_of(q) << " = " << c.baths[index_of(q)].zeta.to_string() << "\n";
  os << "cutoff = " << format_number(c.baths[0].cutoff) << "\n";
  os << "zeta_grid = ";
  for (std::size_t i = 0; i < c.zeta_grid.size(); ++i) os << (i ? "," : "") << c.zeta_grid[i].to_string();
  os << "\n";
  os << "t_final = " << (c.t_final ? format_number(*c.t_final) : "auto") << "\n";
  os << "early_window = " << (c.early_window ? format_number(*c.early_window) : "auto") << "\n";
  os << "grid_points = " << c.grid_points << "\n";
  os << "threads = " << c.threads << "\n";
  os << "output = " << c.output << "\n";
  return os.str();
}

std::string config_fingerprint(const ExperimentConfig& c) {
  // The preset name, output path and thread count do not affect results.
  ExperimentConfig canonical = c;
  canonical.preset.clear();
  canonical.output.clear();
  canonical.threads = 0;
  const std::string text = to_text(canonical);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<double> make_time_grid(double t_final, std::size_t points, double early_window) {
  if (!(t_final > 0.0) || points < 2) throw Error(ErrorKind::argument, "time grid needs t_final > 0 and >= 2 points");
  early_window = std::min(early_window, t_final);
  std::vector<double> grid;
  grid.reserve(points);
  if (early_window >= t_final) {
    for (std::size_t i = 0; i < points; ++i) {
      grid.push_back(t_final * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    return grid;
  }
  const std::size_t n_early = points / 2;
  for (std::size_t i = 0; i < n_early; ++i) {
    grid.push_back(early_window * static_cast<double>(i) / static_cast<double>(n_early - 1));
  }
  const std::size_t n_tail = points - n_early;
  const double ratio = std::log(t_final / early_window);
  for (std::size_t i = 1; i <= n_tail; ++i) {
    const double t = early_window * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n_tail));
    grid.push_back(i == n_tail ? t_final : t);
  }
  return grid;
}

// ---------------------------------------------------------------- runs

namespace {

struct PreparedRun {
  Generator gen;
  double horizon;
  bool auto_horizon;
  std::vector<double> grid;
};

PreparedRun prepare(const ExperimentConfig& config, const BathSet& baths) {
  PreparedRun p{build_generator(config.fridge, baths), 0.0, !config.t_final.has_value(), {}};
  p.horizon = config.t_final ? *config.t_final : auto_horizon(p.gen);
  const double window = config.early_window ? *config.early_window
                                            : default_early_window(config.fridge, p.horizon);
  p.grid = make_time_grid(p.horizon, config.grid_points, window);
  return p;
}

EvolveOptions options_for(bool stop_when_stationary) {
  EvolveOptions opts;
  if (stop_when_stationary) opts.stationary_tol = 1e-12;
  return opts;
}

// Lowest cold-qubit temperature along a stored trajectory, refined by
// re-integrating around the best sample on successively finer grids.
std::pair<double, double> trajectory_minimum(const Generator& gen, const Trajectory& traj) {
  const double omega_c = gen.fridge.omega_c;
  auto theta = [&](const DensityMatrix& rho) {
    return local_temperature(rho.matrix(), Qubit::cold, omega_c).value;
  };
  std::size_t best = 0;
  double best_theta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const double th = theta(traj.states[i]);
    if (th < best_theta) {
      best_theta = th;
      best = i;
    }
  }
  double best_time = traj.times[best];
  if (best == 0 || best + 1 >= traj.states.size()) return {best_theta, best_time};

  DensityMatrix start = traj.states[best - 1];
  double t0 = traj.times[best - 1];
  double span = traj.times[best + 1] - t0;
  for (int level = 0; level < 3; ++level) {
    constexpr std::size_t kRefine = 64;
    std::vector<double> local(kRefine);
    for (std::size_t i = 0; i < kRefine; ++i) local[i] = span * static_cast<double>(i + 1) / kRefine;
    const Trajectory fine = evolve(gen, start, local);
    std::size_t k_best = 0;
    double k_theta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < fine.states.size(); ++i) {
      const double th = theta(fine.states[i]);
      if (th < k_theta) {
        k_theta = th;
        k_best = i;
      }
    }
    if (k_theta < best_theta) {
      best_theta = k_theta;
      best_time = t0 + fine.times[k_best];
    }
    if (k_best == 0 || k_best + 1 >= fine.states.size()) break;
    start = fine.states[k_best - 1];
    t0 += fine.times[k_best - 1];
    span = fine.times[k_best + 1] - fine.times[k_best - 1];
  }
  return {best_theta, best_time};
}

void fill_steady(SweepPoint& p, const Generator& gen, double t_c) {
  const DensityMatrix ss = steady_state(gen);
  const ThermoReadout r = thermo_readout(gen, ss.matrix());
  p.theta_ss = r.theta[0].value;
  p.delta_theta = p.theta_ss - t_c;
  p.qdot_c_ss = r.qdot[0];
  p.qdot_h_ss = r.qdot[1];
  p.qdot_w_ss = r.qdot[2];
  p.cop_ss = r.cop;
}

template <typename PointFn>
SweepResult sweep(const ExperimentConfig& config, RunKind kind, PointFn point_fn) {
  config.validate();
  SweepResult result;
  result.kind = kind;
  auto grid = config.zeta_grid;
  std::sort(grid.begin(), grid.end());
  result.points.resize(grid.size());
  parallel_for(grid.size(), config.threads, [&](std::size_t i) {
    SweepPoint& p = result.points[i];
    p.zeta = grid[i];
    try {
      point_fn(p);
      p.ok = true;
    } catch (const std::exception& e) {
      p.ok = false;
      p.error = e.what();
    }
  });
  check_monotone(result);
  return result;
}

}  // namespace

void check_monotone(SweepResult& result) {
  const SweepPoint* prev = nullptr;
  for (const auto& p : result.points) {
    if (!p.ok) continue;
    if (prev && p.delta_theta < prev->delta_theta) {
      result.monotone = false;
      std::ostringstream os;
      os.precision(17);
      os << "delta_theta decreases from " << prev->delta_theta << " at zeta=" << prev->zeta.to_string()
         << " to " << p.delta_theta << " at zeta=" << p.zeta.to_string();
      result.violations.push_back(os.str());
    }
    prev = &p;
  }
}

bool SweepResult::all_ok() const {
  return std::all_of(points.begin(), points.end(), [](const SweepPoint& p) { return p.ok; });
}

EvolutionRun run_evolution(const ExperimentConfig& config) {
  config.validate();
  const Anharmonicity zeta = config.baths[0].zeta;
  try {
    PreparedRun p = prepare(config, config.baths);
    EvolutionRun run;
    run.zeta = zeta;
    run.horizon = p.horizon;
    run.trajectory = evolve(p.gen, initial_product_gibbs(config.fridge, config.baths), p.grid,
                            options_for(p.auto_horizon));
    run.readouts.reserve(run.trajectory.states.size());
    for (const auto& s : run.trajectory.states) run.readouts.push_back(thermo_readout(p.gen, s.matrix()));
    return run;
  } catch (const Error& e) {
    throw Error(e.kind(), "evolve (" + zeta_context(zeta) + "preset " + config.preset + "): " + e.what());
  }
}

SteadyRun run_steady(const ExperimentConfig& config) {
  config.validate();
  const Anharmonicity zeta = config.baths[0].zeta;
  try {
    const Generator gen = build_generator(config.fridge, config.baths);
    const DensityMatrix ss = steady_state(gen);
    return SteadyRun{zeta, ss, thermo_readout(gen, ss.matrix()), stationarity_residual(gen, ss.matrix())};
  } catch (const Error& e) {
    throw Error(e.kind(), "steady (" + zeta_context(zeta) + "preset " + config.preset + "): " + e.what());
  }
}

SweepResult run_zeta_sweep(const ExperimentConfig& config) {
  const double t_c = config.baths[0].temperature;
  return sweep(config, RunKind::sweep_zeta, [&](SweepPoint& p) {
    const Generator gen = build_generator(config.fridge, config.baths_with(p.zeta));
    fill_steady(p, gen, t_c);
  });
}

SweepResult run_min_temp_sweep(const ExperimentConfig& config) {
  const double t_c = config.baths[0].temperature;
  return sweep(config, RunKind::min_temp_sweep, [&](SweepPoint& p) {
    const BathSet baths = config.baths_with(p.zeta);
    PreparedRun run = prepare(config, baths);
    fill_steady(p, run.gen, t_c);
    const Trajectory traj = evolve(run.gen, initial_product_gibbs(config.fridge, baths), run.grid,
                                   options_for(run.auto_horizon));
    const auto [theta_min, when] = trajectory_minimum(run.gen, traj);
    // The minimum sits at steady state when no sample dips below it.
    const bool at_steady = p.theta_ss <= theta_min + 1e-9;
    p.theta_min = std::min(theta_min, p.theta_ss);
    p.theta_min_time = at_steady ? std::numeric_limits<double>::infinity() : when;
    p.min_at_steady = at_steady;
  });
}

CurrentsResult run_currents_and_cop(const ExperimentConfig& config) {
  config.validate();
  auto grid = config.zeta_grid;
  std::sort(grid.begin(), grid.end());

  // One common time grid: horizon from the slowest of all generators.
  std::vector<Generator> gens;
  double horizon = 0.0;
  for (const auto& z : grid) {
    gens.push_back(build_generator(config.fridge, config.baths_with(z)));
    horizon = std::max(horizon, config.t_final ? *config.t_final : auto_horizon(gens.back()));
  }
  const double window = config.early_window ? *config.early_window
                                            : default_early_window(config.fridge, horizon);
  const std::vector<double> times = make_time_grid(horizon, config.grid_points, window);

  CurrentsResult result;
  result.series.resize(grid.size());
  parallel_for(grid.size(), config.threads, [&](std::size_t i) {
    CurrentSeries& s = result.series[i];
    s.zeta = grid[i];
    try {
      const Generator& gen = gens[i];
      evolve(gen, initial_product_gibbs(config.fridge, config.baths_with(s.zeta)), times, {},
             [&](double t, const DensityMatrix& rho) {
               const ThermoReadout r = thermo_readout(gen, rho.matrix());
               s.times.push_back(t);
               s.qdot.push_back(r.qdot);
               s.cop.push_back(r.cop);
               return true;
             });
      s.ok = true;
    } catch (const std::exception& e) {
      s.ok = false;
      s.error = zeta_context(s.zeta) + e.what();
    }
  });

  const CurrentSeries* harmonic = nullptr;
  for (const auto& s : result.series) {
    if (s.zeta.is_harmonic() && s.ok) harmonic = &s;
  }
  if (harmonic) {
    for (const auto& s : result.series) {
      if (s.zeta.is_harmonic() || !s.ok) continue;
      CopCrossing c;
      c.zeta = s.zeta;
      double prev_diff = std::numeric_limits<double>::quiet_NaN();
      double prev_t = 0.0;
      for (std::size_t k = 0; k < s.times.size(); ++k) {
        if (!s.cop[k] || !harmonic->cop[k]) {
          prev_diff = std::numeric_limits<double>::quiet_NaN();
          continue;
        }
        const double diff = *s.cop[k] - *harmonic->cop[k];
        if (diff == 0.0) continue;
        if (c.initial_sign == 0) c.initial_sign = diff > 0.0 ? 1 : -1;
        if (std::isfinite(prev_diff) && (prev_diff > 0.0) != (diff > 0.0)) {
          c.times.push_back(prev_t + (s.times[k] - prev_t) * prev_diff / (prev_diff - diff));
        }
        prev_diff = diff;
        prev_t = s.times[k];
      }
      result.crossings.push_back(std::move(c));
    }
  }
  return result;
}

// ---------------------------------------------------------------- CSV

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

namespace {
std::string format_optional(const std::optional<double>& x) {
  return x ? format_number(*x) : "nan";
}
}  // namespace

void write_readout_row(std::ostream& out, double t, const ThermoReadout& r) {
  out << format_number(t);
  for (const auto& th : r.theta) out << ',' << format_number(th.value);
  for (double q : r.qdot) out << ',' << format_number(q);
  out << ',' << format_optional(r.cop);
  for (const auto& th : r.theta) out << ',' << format_number(th.coherence);
  out << '\n';
}

void write_evolution_csv(std::ostream& out, const EvolutionRun& run) {
  out << kEvolutionHeader << '\n';
  for (std::size_t i = 0; i < run.readouts.size(); ++i) {
    write_readout_row(out, run.trajectory.times[i], run.readouts[i]);
  }
}

void write_states_csv(std::ostream& out, const Trajectory& traj) {
  out << 't';
  for (int j = 0; j < kDim; ++j) {
    for (int i = 0; i < kDim; ++i) out << ",re_" << i << '_' << j << ",im_" << i << '_' << j;
  }
  out << '\n';
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    out << format_number(traj.times[k]);
    const Mat8& m = traj.states[k].matrix();
    for (int j = 0; j < kDim; ++j) {
      for (int i = 0; i < kDim; ++i) {
        out << ',' << format_number(m(i, j).real()) << ',' << format_number(m(i, j).imag());
      }
    }
    out << '\n';
  }
}

std::vector<std::pair<double, Mat8>> read_states_csv(std::istream& in) {
  std::vector<std::pair<double, Mat8>> out;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::io, "states CSV is empty");
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> values;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      values.push_back(parse_double("states", rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (values.size() != 1 + 2 * kDim * kDim) {
      throw Error(ErrorKind::io, "states CSV line " + std::to_string(line_no) + ": expected 129 fields");
    }
    Mat8 m;
    std::size_t idx = 1;
    for (int j = 0; j < kDim; ++j) {
      for (int i = 0; i < kDim; ++i, idx += 2) m(i, j) = cplx(values[idx], values[idx + 1]);
    }
    out.emplace_back(values[0], m);
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << kSweepHeader << '\n';
  for (const auto& p : result.points) {
    out << p.zeta.to_string() << ',';
    if (!p.ok) {
      out << "nan,nan,nan,nan,nan,nan,nan\n";
      continue;
    }
    out << format_number(p.theta_ss) << ',' << format_number(p.delta_theta) << ','
        << format_optional(p.theta_min) << ','
        << (p.min_at_steady ? (*p.min_at_steady ? "1" : "0") : "nan") << ','
        << format_number(p.qdot_c_ss) << ',' << format_number(p.qdot_w_ss) << ','
        << format_optional(p.cop_ss) << '\n';
  }
}

void write_currents_csv(std::ostream& out, const CurrentsResult& result) {
  out << "zeta,t,qdot_c,qdot_h,qdot_w\n";
  for (const auto& s : result.series) {
    for (std::size_t k = 0; k < s.times.size(); ++k) {
      out << s.zeta.to_string() << ',' << format_number(s.times[k]);
      for (double q : s.qdot[k]) out << ',' << format_number(q);
      out << '\n';
    }
  }
}

void write_cop_csv(std::ostream& out, const CurrentsResult& result) {
  out << "zeta,t,cop\n";
  for (const auto& s : result.series) {
    for (std::size_t k = 0; k < s.times.size(); ++k) {
      out << s.zeta.to_string() << ',' << format_number(s.times[k]) << ',' << format_optional(s.cop[k])
          << '\n';
    }
  }
}

}  // namespace qfridge
