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
#include <span>

#include "qfridge/dynamics.hpp"

namespace qfridge {

enum class TemperatureKind { finite, infinite, negative };

struct LocalTemperature {
  TemperatureKind kind = TemperatureKind::finite;
  /// omega / ln(p0/p1); +inf for the infinite tag, negative for inversion.
  double value = 0.0;
  /// |<0|rho_q|1>| of the reduced state.
  double coherence = 0.0;
};

/// Reduced state of one qubit (partial trace over the other two).
Mat2 reduced_state(const Mat8& rho, Qubit q);

/// Population temperature of qubit q. Throws Error(argument) unless both
/// reduced populations lie strictly inside (0, 1).
LocalTemperature local_temperature(const Mat8& rho, Qubit q, double omega);

/// Reduced off-diagonal magnitude above which a readout is annotated.
inline constexpr double kCoherenceWarning = 1e-3;

/// (w_h - w_w) / (w_h/T_h - w_w/T_w); nullopt when the denominator vanishes
/// (infinite virtual temperature).
std::optional<double> virtual_temperature(double omega_h, double omega_w, double t_h, double t_w);

/// Tr[H D(rho)] for the channels of one bath.
double heat_current(std::span<const JumpChannel> channels, const Mat8& hamiltonian, const Mat8& rho);

/// qdot_c / qdot_w; nullopt when |qdot_w| < 1e-14.
std::optional<double> coefficient_of_performance(double qdot_c, double qdot_w);

struct ThermoReadout {
  std::array<LocalTemperature, 3> theta;
  std::array<double, 3> qdot{};
  std::optional<double> cop;
};

ThermoReadout thermo_readout(const Generator& gen, const Mat8& rho);

}  // namespace qfridge
