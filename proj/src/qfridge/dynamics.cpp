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

#include "qfridge/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qfridge {

StateDiagnostics diagnose_state(const Mat8& rho) {
  StateDiagnostics d;
  d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  d.trace_error = std::abs(rho.trace() - cplx(1.0, 0.0));
  const Mat8 herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat8> solver(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  return d;
}

DensityMatrix DensityMatrix::checked(const Mat8& rho) {
  if (!rho.allFinite()) throw Error(ErrorKind::invariant, "density matrix has non-finite entries");
  const auto d = diagnose_state(rho);
  if (d.hermiticity_error > kTolerance || d.trace_error > kTolerance ||
      d.min_eigenvalue < -kTolerance) {
    std::ostringstream os;
    os << "invalid density matrix: hermiticity error " << d.hermiticity_error
       << ", trace error " << d.trace_error << ", min eigenvalue " << d.min_eigenvalue;
    throw Error(ErrorKind::invariant, os.str());
  }
  return DensityMatrix(rho);
}

DensityMatrix initial_product_gibbs(const RefrigeratorSpec& fridge, const BathSet& baths) {
  fridge.validate();
  Eigen::Matrix<double, 8, 1> diag;
  for (int i = 0; i < kDim; ++i) {
    double p = 1.0;
    for (Qubit q : kQubits) {
      const BathSpec& bath = baths[index_of(q)];
      bath.validate();
      const int n = (i >> (2 - index_of(q))) & 1;
      const double x = std::exp(-fridge.energy(q) / bath.temperature);
      p *= (n == 1 ? x : 1.0) / (1.0 + x);
    }
    diag(i) = p;
  }
  Mat8 rho = Mat8::Zero();
  rho.diagonal() = diag.cast<cplx>();
  return DensityMatrix::checked(rho);
}

double stationarity_residual(const Generator& gen, const Mat8& rho) {
  return (gen.matrix * vectorize(rho)).norm();
}

double trace_distance(const Mat8& a, const Mat8& b) {
  const Mat8 d = a - b;
  const Mat8 herm = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat8> solver(herm, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// Maps the integration-frame state to the lab frame at time t.
class FrameRotation {
 public:
  FrameRotation(const Spectrum& spectrum, bool active) : spectrum_(spectrum), active_(active) {}

  Mat8 to_lab(const Mat8& rho_frame, double t) const {
    if (!active_) return rho_frame;
    const Mat8 u = propagator(t);
    return u * rho_frame * u.adjoint();
  }

 private:
  Mat8 propagator(double t) const {
    Eigen::Matrix<cplx, 8, 1> phases;
    for (int i = 0; i < kDim; ++i) phases(i) = std::polar(1.0, -spectrum_.energies(i) * t);
    return spectrum_.vectors * phases.asDiagonal() * spectrum_.vectors.adjoint();
  }

  const Spectrum& spectrum_;
  bool active_;
};

Vec64 normalize_state(const Vec64& y, StepDiagnostics& diag) {
  Mat8 rho = unvectorize(y);
  const double herm_drift = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const cplx tr = rho.trace();
  const double trace_drift = std::abs(tr - cplx(1.0, 0.0));
  diag.max_hermiticity_drift = std::max(diag.max_hermiticity_drift, herm_drift);
  diag.max_trace_drift = std::max(diag.max_trace_drift, trace_drift);
  if (herm_drift >= 1e-8 || trace_drift >= 1e-8) {
    std::ostringstream os;
    os << "evolve: state drift before correction exceeds 1e-8 (trace " << trace_drift
       << ", hermiticity " << herm_drift << ")";
    throw Error(ErrorKind::invariant, os.str());
  }
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  return vectorize(rho);
}

}  // namespace

StepDiagnostics evolve(const Generator& gen, const DensityMatrix& rho0,
                       std::span<const double> sample_times, const EvolveOptions& options,
                       const SampleObserver& observer) {
  if (sample_times.empty()) throw Error(ErrorKind::argument, "evolve: no sample times");
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    const double t = sample_times[i];
    if (!std::isfinite(t) || t < 0.0 || (i > 0 && t <= sample_times[i - 1])) {
      throw Error(ErrorKind::argument, "evolve: sample times must be finite, >= 0 and strictly increasing");
    }
  }
  const double t_final = sample_times.back();
  if (!(t_final > 0.0)) throw Error(ErrorKind::argument, "evolve: t_final must be > 0");

  StepDiagnostics diag;
  diag.interaction_frame = gen.covariant && !options.force_lab_frame;
  const Mat64 rhs = diag.interaction_frame ? gen.dissipative_part() : gen.matrix;
  const FrameRotation frame(gen.spectrum, diag.interaction_frame);

  int quiet_samples = 0;
  auto emit = [&](double t, const Vec64& y) {
    const Mat8 lab = frame.to_lab(unvectorize(y), t);
    const DensityMatrix rho = DensityMatrix::checked(lab);
    bool keep_going = observer(t, rho);
    if (options.stationary_tol > 0.0) {
      if (stationarity_residual(gen, lab) < options.stationary_tol) {
        if (++quiet_samples >= options.stationary_samples) {
          diag.stationary = true;
          keep_going = false;
        }
      } else {
        quiet_samples = 0;
      }
    }
    return keep_going;
  };

  Vec64 y = vectorize(rho0.matrix());
  double t = 0.0;
  std::size_t next = 0;
  while (next < sample_times.size() && sample_times[next] == 0.0) {
    if (!emit(0.0, y)) return diag;
    ++next;
  }

  const double rhs_norm = rhs.cwiseAbs().rowwise().sum().maxCoeff();
  if (rhs_norm == 0.0) {
    // Generator vanishes in the integration frame: the state is constant there.
    for (; next < sample_times.size(); ++next) {
      if (!emit(sample_times[next], y)) break;
    }
    return diag;
  }

  Vec64 k1 = rhs * y;
  double h = std::min(t_final, 0.01 / rhs_norm);
  const double min_step = options.min_step;

  while (next < sample_times.size()) {
    if (diag.accepted + diag.rejected >= options.max_steps) {
      std::ostringstream os;
      os << "evolve: step budget of " << options.max_steps << " exhausted at t = " << t;
      throw Error(ErrorKind::solver, os.str());
    }
    h = std::min(h, t_final - t);
    const Vec64 k2 = rhs * (y + h * (a21 * k1));
    const Vec64 k3 = rhs * (y + h * (a31 * k1 + a32 * k2));
    const Vec64 k4 = rhs * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec64 k5 = rhs * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec64 k6 = rhs * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vec64 y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vec64 k7 = rhs * y_new;
    const Vec64 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double scale = std::max(y.cwiseAbs().maxCoeff(), y_new.cwiseAbs().maxCoeff());
    const double err_norm = err.cwiseAbs().maxCoeff() / (options.rel_tol * scale);
    if (!std::isfinite(err_norm)) {
      throw Error(ErrorKind::solver, "evolve: non-finite error estimate");
    }

    if (err_norm <= 1.0) {
      const double t_new = (t_final - (t + h) < 1e-12 * t_final) ? t_final : t + h;
      // Cubic Hermite interpolation for samples inside (t, t_new].
      bool stop = false;
      while (next < sample_times.size() && sample_times[next] <= t_new) {
        const double ts = sample_times[next];
        Vec64 ys;
        if (ts == t_new) {
          ys = y_new;
        } else {
          const double s = (ts - t) / h;
          const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
          const double h10 = s * (1 - s) * (1 - s);
          const double h01 = s * s * (3 - 2 * s);
          const double h11 = s * s * (s - 1);
          ys = h00 * y + (h10 * h) * k1 + h01 * y_new + (h11 * h) * k7;
        }
        ++next;
        if (!emit(ts, ys)) {
          stop = true;
          break;
        }
      }
      ++diag.accepted;
      diag.max_error_estimate = std::max(diag.max_error_estimate, err_norm * options.rel_tol);
      if (stop) break;
      y = normalize_state(y_new, diag);
      t = t_new;
      k1 = rhs * y;
    } else {
      ++diag.rejected;
    }

    const double factor = err_norm == 0.0 ? 5.0 : 0.9 * std::pow(err_norm, -0.2);
    h *= std::clamp(factor, 0.2, 5.0);
    if (next < sample_times.size() && h < min_step) {
      std::ostringstream os;
      os << "evolve: step size underflow (h = " << h << " at t = " << t << ", accepted "
         << diag.accepted << ", rejected " << diag.rejected
         << "); the generator is too stiff for explicit integration";
      throw Error(ErrorKind::solver, os.str());
    }
  }
  return diag;
}

Trajectory evolve(const Generator& gen, const DensityMatrix& rho0,
                  std::span<const double> sample_times, const EvolveOptions& options) {
  Trajectory traj;
  traj.diagnostics = evolve(gen, rho0, sample_times, options, [&](double t, const DensityMatrix& rho) {
    traj.times.push_back(t);
    traj.states.push_back(rho);
    return true;
  });
  return traj;
}

DensityMatrix steady_state(const Generator& gen) {
  Eigen::JacobiSVD<Mat64> svd(gen.matrix, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double largest = sv(0);
  const double smallest = sv(kSuperDim - 1);
  const double next = sv(kSuperDim - 2);
  if (next <= 1e-9 * largest) {
    std::ostringstream os;
    os << "steady_state: null space is degenerate (decoupled sector); smallest singular values:";
    for (int i = kSuperDim - 1; i >= std::max(0, kSuperDim - 6); --i) os << ' ' << sv(i);
    os << " (largest " << largest << ")";
    throw Error(ErrorKind::solver, os.str());
  }
  Mat8 rho = unvectorize(svd.matrixV().col(kSuperDim - 1));
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();

  const double residual = stationarity_residual(gen, rho);
  if (residual > 1e-11 * largest) {
    std::ostringstream os;
    os << "steady_state: residual " << residual << " exceeds 1e-11 ||L|| (" << 1e-11 * largest
       << "); smallest singular value " << smallest;
    throw Error(ErrorKind::solver, os.str());
  }
  return DensityMatrix::checked(rho);
}

}  // namespace qfridge
