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

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace qfridge {

using cplx = std::complex<double>;

// Three-qubit register operators and their column-stacked superoperators.
using Mat2 = Eigen::Matrix<cplx, 2, 2>;
using Mat8 = Eigen::Matrix<cplx, 8, 8>;
using Vec8r = Eigen::Matrix<double, 8, 1>;
using Vec64 = Eigen::Matrix<cplx, 64, 1>;
using Mat64 = Eigen::Matrix<cplx, 64, 64>;

inline constexpr int kDim = 8;
inline constexpr int kSuperDim = 64;

/// Tensor factors in fixed order: cold is the most significant bit of the
/// basis index |n_c n_h n_w>.
enum class Qubit : int { cold = 0, hot = 1, work = 2 };

inline constexpr Qubit kQubits[] = {Qubit::cold, Qubit::hot, Qubit::work};

inline int index_of(Qubit q) { return static_cast<int>(q); }

inline const char* label_of(Qubit q) {
  switch (q) {
    case Qubit::cold: return "c";
    case Qubit::hot: return "h";
    case Qubit::work: return "w";
  }
  return "?";
}

enum class ErrorKind { argument, config, solver, invariant, io };

/// Single exception type for the core; the C API maps `kind` onto status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

Qubit parse_qubit(std::string_view label);

inline Vec64 vectorize(const Mat8& m) {
  return Eigen::Map<const Vec64>(m.data());
}

inline Mat8 unvectorize(const Vec64& v) {
  return Eigen::Map<const Mat8>(v.data());
}

}  // namespace qfridge
