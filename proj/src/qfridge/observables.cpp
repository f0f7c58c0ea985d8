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

#include "qfridge/observables.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qfridge {

Mat2 reduced_state(const Mat8& rho, Qubit q) {
  const int bit = 2 - index_of(q);
  Mat2 out = Mat2::Zero();
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      // Other factors must agree for the partial trace.
      if (((i ^ j) & ~(1 << bit)) != 0) continue;
      out((i >> bit) & 1, (j >> bit) & 1) += rho(i, j);
    }
  }
  return out;
}

LocalTemperature local_temperature(const Mat8& rho, Qubit q, double omega) {
  const Mat2 r = reduced_state(rho, q);
  const double p0 = r(0, 0).real();
  const double p1 = r(1, 1).real();
  if (!(p0 > 0.0 && p0 < 1.0 && p1 > 0.0 && p1 < 1.0)) {
    std::ostringstream os;
    os << "local temperature of qubit " << label_of(q) << " needs populations in (0,1), got p0 = "
       << p0 << ", p1 = " << p1;
    throw Error(ErrorKind::argument, os.str());
  }
  LocalTemperature out;
  out.coherence = std::abs(r(0, 1));
  if (p0 == p1) {
    out.kind = TemperatureKind::infinite;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  out.value = omega / std::log(p0 / p1);
  out.kind = p1 > p0 ? TemperatureKind::negative : TemperatureKind::finite;
  return out;
}

std::optional<double> virtual_temperature(double omega_h, double omega_w, double t_h, double t_w) {
  if (!(t_h > 0.0) || !(t_w > 0.0)) {
    throw Error(ErrorKind::argument, "virtual temperature needs positive bath temperatures");
  }
  const double denom = omega_h / t_h - omega_w / t_w;
  if (denom == 0.0) return std::nullopt;
  return (omega_h - omega_w) / denom;
}

double heat_current(std::span<const JumpChannel> channels, const Mat8& hamiltonian, const Mat8& rho) {
  const cplx q = (hamiltonian * dissipator_apply(channels, rho)).trace();
  const double scale = std::max(std::abs(q), 1.0) * 1e-12;
  if (std::abs(q.imag()) > scale) {
    std::ostringstream os;
    os << "heat current has imaginary residue " << q.imag();
    throw Error(ErrorKind::invariant, os.str());
  }
  return q.real();
}

std::optional<double> coefficient_of_performance(double qdot_c, double qdot_w) {
  if (std::abs(qdot_w) < 1e-14) return std::nullopt;
  return qdot_c / qdot_w;
}

ThermoReadout thermo_readout(const Generator& gen, const Mat8& rho) {
  ThermoReadout out;
  for (Qubit q : kQubits) {
    const int a = index_of(q);
    out.theta[a] = local_temperature(rho, q, gen.fridge.energy(q));
    out.qdot[a] = heat_current(gen.channels_for(q), gen.hamiltonian, rho);
  }
  out.cop = coefficient_of_performance(out.qdot[index_of(Qubit::cold)],
                                       out.qdot[index_of(Qubit::work)]);
  return out;
}

}  // namespace qfridge
