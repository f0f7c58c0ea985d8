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

#include <optional>
#include <string>

#include "qfridge/types.hpp"

namespace qfridge {

/// Closed-system data of the three-qubit refrigerator. Energies in natural
/// units (hbar = k_B = 1).
struct RefrigeratorSpec {
  double omega_c = 1.0;
  double omega_h = 2.0;
  double omega_w = 1.0;
  double g = 0.0;

  /// Throws Error(argument) unless all energies are positive, g >= 0 and
  /// omega_h == omega_c + omega_w to 1e-12 relative.
  void validate() const;

  /// Set when g exceeds the smallest qubit energy; the model stays usable.
  std::optional<std::string> warning() const;

  double energy(Qubit q) const;
};

struct Spectrum {
  Vec8r energies;  // ascending
  Mat8 vectors;    // columns are eigenstates
};

Mat8 build_free_hamiltonian(const RefrigeratorSpec& spec);
Mat8 build_interaction(const RefrigeratorSpec& spec);
Mat8 build_refrigerator_hamiltonian(const RefrigeratorSpec& spec);

/// Dense Hermitian eigendecomposition. Rejects input whose anti-Hermitian
/// part exceeds 1e-12 of its norm.
Spectrum diagonalize(const Mat8& hamiltonian);

Mat8 local_pauli_x(Qubit q);

/// Basis index of |n_c n_h n_w>.
constexpr int basis_index(int n_c, int n_h, int n_w) {
  return (n_c << 2) | (n_h << 1) | n_w;
}

}  // namespace qfridge
