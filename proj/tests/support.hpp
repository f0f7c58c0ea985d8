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

// Shared helpers for the test binaries: an extended-precision occupation
// oracle and seeded random states, unitaries and configurations.

#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>

#include "qfridge/types.hpp"

namespace qfridge::testing {

using big = boost::multiprecision::cpp_bin_float_50;

// Direct partial sums of n exp(-beta w (n + n^2/zeta)) over the plain sum,
// stopped far below double precision. zeta <= 0 selects the harmonic mode.
inline double occupation_oracle(double omega, double temperature, double zeta) {
  const big beta_omega = big(omega) / big(temperature);
  big s0 = 0;
  big s1 = 0;
  for (long n = 0;; ++n) {
    const big bn(n);
    const big exponent = zeta > 0 ? beta_omega * (bn + bn * bn / big(zeta)) : beta_omega * bn;
    const big term = exp(-exponent);
    s0 += term;
    s1 += bn * term;
    if (n > 10 && term < big("1e-45") * s0) break;
  }
  return static_cast<double>(s1 / s0);
}

inline Mat8 random_density(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Mat8 g;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) g(i, j) = cplx(normal(rng), normal(rng));
  Mat8 rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline Mat8 random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Mat8 g;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) g(i, j) = cplx(normal(rng), normal(rng));
  return (g + g.adjoint()) / 2.0;
}

// Haar-distributed n x n unitary from the QR decomposition of a Ginibre matrix.
inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = cplx(normal(rng), normal(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
  return q;
}

inline double trace_norm_distance(const Mat8& a, const Mat8& b) {
  Eigen::SelfAdjointEigenSolver<Mat8> es(a - b);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace qfridge::testing
