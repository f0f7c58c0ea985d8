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

#include "qfridge/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qfridge {

namespace {

struct Level {
  int first = 0;
  int last = 0;  // inclusive
  double energy = 0.0;
};

std::vector<Level> group_levels(const Vec8r& energies, double tol) {
  std::vector<Level> levels;
  for (int i = 0; i < kDim; ++i) {
    if (!levels.empty() && energies(i) - energies(levels.back().first) <= tol) {
      levels.back().last = i;
    } else {
      levels.push_back(Level{i, i, 0.0});
    }
  }
  for (auto& lv : levels) {
    lv.energy = energies.segment(lv.first, lv.last - lv.first + 1).mean();
  }
  return levels;
}

}  // namespace

std::vector<BohrFrequency> bohr_frequencies(const Spectrum& spectrum, Qubit q) {
  const Vec8r& e = spectrum.energies;
  const double spread = e.maxCoeff() - e.minCoeff();
  const double tol = 1e-9 * std::max(spread, 1e-300);
  const auto levels = group_levels(e, tol);

  const Mat8 x = spectrum.vectors.adjoint() * local_pauli_x(q) * spectrum.vectors;
  const double element_floor = 1e-12 * x.norm();

  struct Candidate {
    double omega;
    const Level* lower;  // holds the l indices
    const Level* upper;  // holds the k indices
  };
  std::vector<Candidate> candidates;
  for (const auto& ll : levels) {
    for (const auto& lk : levels) {
      const double block = x.block(ll.first, lk.first, ll.last - ll.first + 1,
                                   lk.last - lk.first + 1).norm();
      if (block <= element_floor) continue;
      if (&ll == &lk) {
        std::ostringstream os;
        os << "zero Bohr frequency for qubit " << label_of(q) << " at level energy "
           << ll.energy
           << ": sigma^x couples degenerate eigenstates, outside the supported working range";
        throw Error(ErrorKind::solver, os.str());
      }
      candidates.push_back(Candidate{lk.energy - ll.energy, &ll, &lk});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.omega < b.omega; });

  double max_abs = 0.0;
  for (const auto& c : candidates) max_abs = std::max(max_abs, std::abs(c.omega));
  const double merge_tol = 1e-9 * max_abs;

  std::vector<BohrFrequency> out;
  double group_start = 0.0;
  std::vector<double> members;
  for (const auto& c : candidates) {
    if (out.empty() || c.omega - group_start > merge_tol) {
      if (!out.empty()) {
        double s = 0.0;
        for (double m : members) s += m;
        out.back().omega = s / static_cast<double>(members.size());
      }
      out.push_back(BohrFrequency{c.omega, {}});
      group_start = c.omega;
      members.clear();
    }
    members.push_back(c.omega);
    for (int l = c.lower->first; l <= c.lower->last; ++l) {
      for (int k = c.upper->first; k <= c.upper->last; ++k) out.back().pairs.emplace_back(l, k);
    }
  }
  if (!out.empty()) {
    double s = 0.0;
    for (double m : members) s += m;
    out.back().omega = s / static_cast<double>(members.size());
  }
  return out;
}

std::vector<JumpChannel> build_jump_channels(const Spectrum& spectrum, const BathSet& baths) {
  std::vector<JumpChannel> channels;
  for (Qubit q : kQubits) {
    const BathSpec& bath = baths[index_of(q)];
    bath.validate();
    const Mat8 x = spectrum.vectors.adjoint() * local_pauli_x(q) * spectrum.vectors;
    for (const auto& bf : bohr_frequencies(spectrum, q)) {
      Mat8 masked = Mat8::Zero();
      for (const auto& [l, k] : bf.pairs) masked(l, k) = x(l, k);
      JumpChannel ch;
      ch.qubit = q;
      ch.omega = bf.omega;
      ch.op = spectrum.vectors * masked * spectrum.vectors.adjoint();
      ch.rate = decay_rate(bath, bf.omega);
      channels.push_back(std::move(ch));
    }
  }
  return channels;
}

Mat8 dissipator_apply(std::span<const JumpChannel> channels, const Mat8& rho) {
  Mat8 out = Mat8::Zero();
  for (const auto& ch : channels) {
    if (ch.rate == 0.0) continue;
    const Mat8 ada = ch.op.adjoint() * ch.op;
    out += ch.rate * (ch.op * rho * ch.op.adjoint() - 0.5 * (ada * rho + rho * ada));
  }
  return out;
}

Mat64 kron(const Mat8& a, const Mat8& b) {
  Mat64 out;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) out.block<kDim, kDim>(i * kDim, j * kDim) = a(i, j) * b;
  }
  return out;
}

Mat64 dissipator_superoperator(std::span<const JumpChannel> channels) {
  const Mat8 id = Mat8::Identity();
  Mat64 out = Mat64::Zero();
  for (const auto& ch : channels) {
    if (ch.rate == 0.0) continue;
    const Mat8 ada = ch.op.adjoint() * ch.op;
    // vec(A X B) = (B^T (x) A) vec(X)
    out += ch.rate * (kron(ch.op.conjugate(), ch.op) - 0.5 * kron(id, ada) -
                      0.5 * kron(ada.transpose(), id));
  }
  return out;
}

Mat64 hamiltonian_superoperator(const Mat8& hamiltonian) {
  const Mat8 id = Mat8::Identity();
  return cplx(0.0, -1.0) * (kron(id, hamiltonian) - kron(hamiltonian.transpose(), id));
}

std::vector<JumpChannel> Generator::channels_for(Qubit q) const {
  std::vector<JumpChannel> out;
  for (const auto& ch : channels) {
    if (ch.qubit == q) out.push_back(ch);
  }
  return out;
}

Mat8 Generator::apply(const Mat8& rho) const {
  const cplx minus_i(0.0, -1.0);
  return minus_i * (hamiltonian * rho - rho * hamiltonian) + dissipator_apply(channels, rho);
}

Generator build_generator(const RefrigeratorSpec& fridge, const BathSet& baths) {
  Generator gen;
  gen.fridge = fridge;
  gen.baths = baths;
  gen.hamiltonian = build_refrigerator_hamiltonian(fridge);
  gen.spectrum = diagonalize(gen.hamiltonian);
  gen.channels = build_jump_channels(gen.spectrum, baths);
  gen.hamiltonian_part = hamiltonian_superoperator(gen.hamiltonian);
  for (Qubit q : kQubits) {
    const auto chans = gen.channels_for(q);
    gen.dissipators[index_of(q)] = dissipator_superoperator(chans);
  }
  const Mat64 dissipative = gen.dissipative_part();
  gen.matrix = gen.hamiltonian_part + dissipative;

  const Mat64 comm = gen.hamiltonian_part * dissipative - dissipative * gen.hamiltonian_part;
  const double scale = gen.hamiltonian_part.norm() * dissipative.norm();
  gen.covariant = comm.norm() <= 1e-10 * std::max(scale, 1e-300);
  return gen;
}

Eigen::Matrix<cplx, 64, 1> generator_eigenvalues(const Mat64& generator) {
  Eigen::ComplexEigenSolver<Mat64> solver(generator, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::solver, "generator eigenvalue solve did not converge");
  }
  return solver.eigenvalues();
}

double slowest_relaxation_rate(const Mat64& generator) {
  const auto ev = generator_eigenvalues(generator);
  const double threshold = 1e-10 * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  double slowest = 0.0;
  for (int i = 0; i < ev.size(); ++i) {
    const double re = ev(i).real();
    if (re < -threshold && (slowest == 0.0 || -re < slowest)) slowest = -re;
  }
  return slowest;
}

void write_channels_csv(std::ostream& out, std::span<const JumpChannel> channels) {
  out << "alpha,omega,rate,op_norm\n";
  const auto old_precision = out.precision(17);
  for (const auto& ch : channels) {
    out << label_of(ch.qubit) << ',' << ch.omega << ',' << ch.rate << ',' << ch.op.norm() << '\n';
  }
  out.precision(old_precision);
}

}  // namespace qfridge
