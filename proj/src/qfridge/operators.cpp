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

#include "qfridge/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qfridge {

Qubit parse_qubit(std::string_view label) {
  if (label == "c" || label == "cold") return Qubit::cold;
  if (label == "h" || label == "hot") return Qubit::hot;
  if (label == "w" || label == "work") return Qubit::work;
  throw Error(ErrorKind::argument,
              "unknown qubit label '" + std::string(label) + "' (expected c, h or w)");
}

void RefrigeratorSpec::validate() const {
  auto finite_positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!finite_positive(omega_c) || !finite_positive(omega_h) || !finite_positive(omega_w)) {
    throw Error(ErrorKind::argument, "qubit energies must be finite and strictly positive");
  }
  if (!std::isfinite(g) || g < 0.0) {
    throw Error(ErrorKind::argument, "interaction strength g must be finite and >= 0");
  }
  const double mismatch = std::abs(omega_h - (omega_c + omega_w));
  if (mismatch > 1e-12 * omega_h) {
    std::ostringstream os;
    os << "self-contained condition violated: omega_h = " << omega_h
       << " but omega_c + omega_w = " << omega_c + omega_w;
    throw Error(ErrorKind::argument, os.str());
  }
}

std::optional<std::string> RefrigeratorSpec::warning() const {
  const double smallest = std::min({omega_c, omega_h, omega_w});
  if (g > smallest) {
    std::ostringstream os;
    os << "interaction g = " << g << " exceeds the smallest qubit energy " << smallest
       << "; the weak-interaction picture does not apply";
    return os.str();
  }
  return std::nullopt;
}

double RefrigeratorSpec::energy(Qubit q) const {
  switch (q) {
    case Qubit::cold: return omega_c;
    case Qubit::hot: return omega_h;
    case Qubit::work: return omega_w;
  }
  return 0.0;
}

Mat8 build_free_hamiltonian(const RefrigeratorSpec& spec) {
  spec.validate();
  Mat8 h = Mat8::Zero();
  for (int i = 0; i < kDim; ++i) {
    const int n_c = (i >> 2) & 1;
    const int n_h = (i >> 1) & 1;
    const int n_w = i & 1;
    h(i, i) = n_c * spec.omega_c + n_h * spec.omega_h + n_w * spec.omega_w;
  }
  return h;
}

Mat8 build_interaction(const RefrigeratorSpec& spec) {
  spec.validate();
  Mat8 h = Mat8::Zero();
  const int a = basis_index(1, 0, 1);
  const int b = basis_index(0, 1, 0);
  h(a, b) = spec.g;
  h(b, a) = spec.g;
  return h;
}

Mat8 build_refrigerator_hamiltonian(const RefrigeratorSpec& spec) {
  return build_free_hamiltonian(spec) + build_interaction(spec);
}

Spectrum diagonalize(const Mat8& hamiltonian) {
  const double scale = std::max(hamiltonian.norm(), 1.0);
  const double skew = (hamiltonian - hamiltonian.adjoint()).norm();
  if (!std::isfinite(skew) || skew > 1e-12 * scale) {
    std::ostringstream os;
    os << "diagonalize: input is not Hermitian (||H - H^dagger|| = " << skew << ")";
    throw Error(ErrorKind::argument, os.str());
  }
  const Mat8 herm = 0.5 * (hamiltonian + hamiltonian.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat8> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::solver, "diagonalize: eigensolver did not converge");
  }
  // Eigen returns eigenvalues in ascending order.
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

Mat8 local_pauli_x(Qubit q) {
  const int bit = 2 - index_of(q);
  Mat8 x = Mat8::Zero();
  for (int i = 0; i < kDim; ++i) x(i ^ (1 << bit), i) = 1.0;
  return x;
}

}  // namespace qfridge
