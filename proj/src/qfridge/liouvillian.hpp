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

#include <array>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "qfridge/bath.hpp"
#include "qfridge/operators.hpp"

namespace qfridge {

/// Baths indexed by Qubit (cold, hot, work).
using BathSet = std::array<BathSpec, 3>;

/// Transitions (l, k) with e_k - e_l = omega that sigma^x of one qubit drives.
struct BohrFrequency {
  double omega = 0.0;
  std::vector<std::pair<int, int>> pairs;
};

struct JumpChannel {
  Qubit qubit = Qubit::cold;
  double omega = 0.0;
  Mat8 op;
  double rate = 0.0;
};

/// Distinct nonzero Bohr frequencies of sigma^x_q in the eigenbasis, sorted
/// ascending. Frequencies closer than 1e-9 * max|omega| are merged. A
/// transition inside a degenerate level throws Error(solver).
std::vector<BohrFrequency> bohr_frequencies(const Spectrum& spectrum, Qubit q);

/// One channel per (qubit, Bohr frequency), ordered by qubit then omega.
std::vector<JumpChannel> build_jump_channels(const Spectrum& spectrum, const BathSet& baths);

/// Sum over `channels` of rate * (A rho A^dag - {A^dag A, rho}/2).
Mat8 dissipator_apply(std::span<const JumpChannel> channels, const Mat8& rho);

/// Superoperator of dissipator_apply on column-stacked matrices.
Mat64 dissipator_superoperator(std::span<const JumpChannel> channels);

/// -i(I (x) H - H^T (x) I).
Mat64 hamiltonian_superoperator(const Mat8& hamiltonian);

/// Kronecker product of two 8x8 matrices.
Mat64 kron(const Mat8& a, const Mat8& b);

struct Generator {
  RefrigeratorSpec fridge;
  BathSet baths;
  Mat8 hamiltonian;
  Spectrum spectrum;
  std::vector<JumpChannel> channels;
  Mat64 hamiltonian_part;
  std::array<Mat64, 3> dissipators;  // per qubit
  Mat64 matrix;                      // full generator
  /// True when the dissipative part commutes with the Hamiltonian part
  /// (the secular construction guarantees it up to rounding).
  bool covariant = false;

  std::vector<JumpChannel> channels_for(Qubit q) const;
  Mat64 dissipative_part() const { return dissipators[0] + dissipators[1] + dissipators[2]; }
  /// Direct matrix-form evaluation of -i[H, rho] + sum_a D_a(rho).
  Mat8 apply(const Mat8& rho) const;
};

Generator build_generator(const RefrigeratorSpec& fridge, const BathSet& baths);

/// Eigenvalues of the 64x64 generator.
Eigen::Matrix<cplx, 64, 1> generator_eigenvalues(const Mat64& generator);

/// Smallest |Re lambda| among eigenvalues with Re lambda < -threshold, where
/// threshold = 1e-10 * max(|lambda|). Returns 0 if there is none.
double slowest_relaxation_rate(const Mat64& generator);

/// CSV dump with header alpha,omega,rate,op_norm.
void write_channels_csv(std::ostream& out, std::span<const JumpChannel> channels);

}  // namespace qfridge
