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
#include <functional>
#include <span>
#include <vector>

#include "qfridge/liouvillian.hpp"

namespace qfridge {

struct StateDiagnostics {
  double hermiticity_error = 0.0;  // max |rho - rho^dag|
  double trace_error = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;
};

StateDiagnostics diagnose_state(const Mat8& rho);

/// 8x8 state that is Hermitian, unit-trace and positive to 1e-10.
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  /// Throws Error(invariant) when `rho` violates the tolerances.
  static DensityMatrix checked(const Mat8& rho);

  const Mat8& matrix() const { return rho_; }

 private:
  explicit DensityMatrix(const Mat8& rho) : rho_(rho) {}
  Mat8 rho_;
};

/// Tensor product of per-qubit Gibbs states at the bath temperatures.
DensityMatrix initial_product_gibbs(const RefrigeratorSpec& fridge, const BathSet& baths);

struct EvolveOptions {
  double rel_tol = 1e-9;
  /// Steps below this size (absolute time) abort the run.
  double min_step = 1e-9;
  std::int64_t max_steps = 20'000'000;
  /// When > 0, stop after `stationary_samples` consecutive output samples
  /// with ||L vec(rho)|| below this value.
  double stationary_tol = 0.0;
  int stationary_samples = 3;
  /// Integrate the full generator even when the interaction frame applies.
  bool force_lab_frame = false;
};

struct StepDiagnostics {
  std::int64_t accepted = 0;
  std::int64_t rejected = 0;
  double max_error_estimate = 0.0;  // largest accepted scaled local error
  double max_trace_drift = 0.0;     // before renormalization
  double max_hermiticity_drift = 0.0;
  bool interaction_frame = false;
  bool stationary = false;          // stopped by stationary_tol
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  StepDiagnostics diagnostics;
};

/// Receives each output sample; return false to stop the run.
using SampleObserver = std::function<bool(double t, const DensityMatrix& rho)>;

/// Adaptive Dormand-Prince 5(4) integration of d rho/dt = L rho, reporting
/// states at `sample_times` (non-negative, strictly increasing).
StepDiagnostics evolve(const Generator& gen, const DensityMatrix& rho0,
                       std::span<const double> sample_times, const EvolveOptions& options,
                       const SampleObserver& observer);

Trajectory evolve(const Generator& gen, const DensityMatrix& rho0,
                  std::span<const double> sample_times, const EvolveOptions& options = {});

/// Null vector of L from its smallest singular value, normalized to unit
/// trace. Throws Error(solver) if the null space is degenerate or the
/// residual exceeds 1e-11 ||L||.
DensityMatrix steady_state(const Generator& gen);

/// ||L vec(rho)||_2.
double stationarity_residual(const Generator& gen, const Mat8& rho);

double trace_distance(const Mat8& a, const Mat8& b);

}  // namespace qfridge
