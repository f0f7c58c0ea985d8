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

#include <cmath>
#include <algorithm>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "qfridge/liouvillian.hpp"
#include "support.hpp"

using namespace qfridge;

namespace {

RefrigeratorSpec fridge(double g) {
  RefrigeratorSpec s;
  s.g = g;
  return s;
}

BathSet baths(double kc, double kh, double kw, Anharmonicity z, double tc = 1, double th = 1, double tw = 2) {
  BathSet b;
  const double kappa[3] = {kc, kh, kw};
  const double temp[3] = {tc, th, tw};
  const double omega0[3] = {1, 2, 1};
  for (int a = 0; a < 3; ++a) {
    b[a].kappa = kappa[a] * omega0[a];
    b[a].temperature = temp[a];
    b[a].zeta = z;
    b[a].omega0 = omega0[a];
  }
  return b;
}

std::vector<double> omegas(const std::vector<BohrFrequency>& f) {
  std::vector<double> out;
  for (const auto& b : f) out.push_back(b.omega);
  return out;
}

// Re-mixes every degenerate eigenspace with an independent random unitary.
Spectrum remix(const Spectrum& sp, std::mt19937_64& rng) {
  Spectrum out = sp;
  int start = 0;
  while (start < kDim) {
    int end = start + 1;
    while (end < kDim && std::abs(sp.energies(end) - sp.energies(start)) < 1e-9) ++end;
    const int n = end - start;
    if (n > 1) out.vectors.middleCols(start, n) = sp.vectors.middleCols(start, n) * testing::random_unitary(rng, n);
    start = end;
  }
  return out;
}

}  // namespace

TEST_CASE("Bohr frequencies without coupling are the bare energies") {
  const Spectrum sp = diagonalize(build_refrigerator_hamiltonian(fridge(0.0)));
  CHECK(omegas(bohr_frequencies(sp, Qubit::cold)) == std::vector<double>{-1.0, 1.0});
  CHECK(omegas(bohr_frequencies(sp, Qubit::hot)) == std::vector<double>{-2.0, 2.0});
  CHECK(omegas(bohr_frequencies(sp, Qubit::work)) == std::vector<double>{-1.0, 1.0});
}

TEST_CASE("coupling splits each Bohr frequency into three") {
  const double g = 0.1;
  const Spectrum sp = diagonalize(build_refrigerator_hamiltonian(fridge(g)));
  const double base[3] = {1, 2, 1};
  for (Qubit q : kQubits) {
    const auto f = omegas(bohr_frequencies(sp, q));
    REQUIRE(f.size() == 6);
    const double w = base[index_of(q)];
    const double expected[6] = {-w - g, -w, -w + g, w - g, w, w + g};
    for (int k = 0; k < 6; ++k) CHECK(f[k] == doctest::Approx(expected[k]).epsilon(1e-12));
  }
}

TEST_CASE("jump operators resolve sigma^x and pair up under adjoint") {
  for (double g : {0.0, 0.1, 0.8}) {
    const Spectrum sp = diagonalize(build_refrigerator_hamiltonian(fridge(g)));
    const auto channels = build_jump_channels(sp, baths(1e-4, 1e-4, 1e-4, Anharmonicity::finite(50)));
    for (Qubit q : kQubits) {
      Mat8 sum = Mat8::Zero();
      std::vector<const JumpChannel*> mine;
      for (const auto& c : channels)
        if (c.qubit == q) {
          sum += c.op;
          mine.push_back(&c);
        }
      CHECK((sum - local_pauli_x(q)).norm() < 1e-12);
      for (const auto* c : mine) {
        bool paired = false;
        for (const auto* d : mine)
          if (std::abs(d->omega + c->omega) < 1e-12 && (d->op - c->op.adjoint()).norm() < 1e-12) paired = true;
        CHECK(paired);
        // [H, A_w] = -w A_w
        const Mat8 h = build_refrigerator_hamiltonian(fridge(g));
        CHECK((h * c->op - c->op * h + c->omega * c->op).norm() < 1e-12);
      }
    }
  }
}

TEST_CASE("uncoupled jump operators are local ladder operators") {
  const Spectrum sp = diagonalize(build_refrigerator_hamiltonian(fridge(0.0)));
  const auto channels = build_jump_channels(sp, baths(1e-4, 1e-4, 1e-4, Anharmonicity::harmonic()));
  for (const auto& c : channels) {
    const Mat8 x = local_pauli_x(c.qubit);
    const int bit = 2 - index_of(c.qubit);
    Mat8 expected = Mat8::Zero();
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        const bool lowering = ((j >> bit) & 1) == 1;
        if (x(i, j) != cplx(0, 0) && (c.omega > 0) == lowering) expected(i, j) = 1.0;
      }
    CHECK((c.op - expected).norm() < 1e-12);
  }
}

TEST_CASE("a level shared by a transition is rejected") {
  const Spectrum sp = diagonalize(build_refrigerator_hamiltonian(fridge(1.0)));
  try {
    (void)bohr_frequencies(sp, Qubit::cold);
    FAIL("zero Bohr frequency accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::solver);
  }
}

TEST_CASE("Gibbs state of a common temperature is stationary") {
  for (auto z : {Anharmonicity::harmonic()}) {
    for (double t : {0.7, 1.5}) {
      const RefrigeratorSpec f = fridge(0.1);
      const Generator gen = build_generator(f, baths(1e-4, 2e-4, 3e-4, z, t, t, t));
      const Spectrum& sp = gen.spectrum;
      Mat8 rho = sp.vectors * (-sp.energies / t).array().exp().matrix().cast<cplx>().asDiagonal() * sp.vectors.adjoint();
      rho /= rho.trace();
      CHECK(dissipator_apply(gen.channels, rho).norm() < 1e-18);
      CHECK(gen.apply(rho).norm() < 1e-15);
    }
  }
}

TEST_CASE("superoperator agrees with the direct matrix form") {
  std::mt19937_64 rng(7);
  for (auto z : {Anharmonicity::harmonic(), Anharmonicity::finite(10)}) {
    for (double g : {0.1, 0.8}) {
      const Generator gen = build_generator(fridge(g), baths(1e-4, 2e-5, 1e-3, z));
      for (int i = 0; i < 50; ++i) {
        const Mat8 rho = testing::random_density(rng);
        const Mat8 via_matrix = unvectorize(gen.matrix * vectorize(rho));
        CHECK((via_matrix - gen.apply(rho)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(dissipator_apply(gen.channels, rho).trace()) < 1e-17);
        const Mat8 d = gen.apply(rho);
        CHECK((d - d.adjoint()).norm() < 1e-15);
      }
      CHECK(gen.covariant);
    }
  }
}

TEST_CASE("superoperator identities") {
  std::mt19937_64 rng(11);
  const Mat8 a = testing::random_hermitian(rng), b = testing::random_hermitian(rng), x = testing::random_density(rng);
  CHECK((unvectorize(kron(b.transpose(), a) * vectorize(x)) - a * x * b).norm() < 1e-12);
  const Mat8 h = build_refrigerator_hamiltonian(fridge(0.4));
  const cplx minus_i(0.0, -1.0);
  CHECK((unvectorize(hamiltonian_superoperator(h) * vectorize(x)) - minus_i * (h * x - x * h)).norm() < 1e-12);
}

TEST_CASE("closed system generator is the commutator") {
  const RefrigeratorSpec f = fridge(0.1);
  const Generator gen = build_generator(f, baths(0, 0, 0, Anharmonicity::harmonic()));
  CHECK(gen.channels.size() == 18);
  for (const auto& c : gen.channels) CHECK(c.rate == 0.0);
  CHECK((gen.matrix - hamiltonian_superoperator(gen.hamiltonian)).norm() == 0.0);
  const auto ev = generator_eigenvalues(gen.matrix);
  CHECK(ev.real().cwiseAbs().maxCoeff() < 1e-12);
  CHECK(slowest_relaxation_rate(gen.matrix) == 0.0);
}

TEST_CASE("generator spectrum lies in the closed left half-plane") {
  for (auto z : {Anharmonicity::harmonic(), Anharmonicity::finite(20)}) {
    const Generator gen = build_generator(fridge(0.8), baths(1e-4, 1e-5, 1e-3, z));
    const auto ev = generator_eigenvalues(gen.matrix);
    CHECK(ev.real().maxCoeff() <= 1e-10);
    CHECK(slowest_relaxation_rate(gen.matrix) > 0.0);
  }
}

TEST_CASE("dissipators do not depend on the eigenbasis inside degenerate levels") {
  std::mt19937_64 rng(3);
  for (double g : {0.0, 0.1, 0.8}) {
    const Spectrum sp = diagonalize(build_refrigerator_hamiltonian(fridge(g)));
    const BathSet b = baths(1e-4, 2e-4, 1e-4, Anharmonicity::finite(50));
    const auto ref = build_jump_channels(sp, b);
    for (int trial = 0; trial < 5; ++trial) {
      const auto mixed = build_jump_channels(remix(sp, rng), b);
      REQUIRE(mixed.size() == ref.size());
      for (Qubit q : kQubits) {
        std::vector<JumpChannel> r1, r2;
        for (const auto& c : ref) if (c.qubit == q) r1.push_back(c);
        for (const auto& c : mixed) if (c.qubit == q) r2.push_back(c);
        CHECK((dissipator_superoperator(r1) - dissipator_superoperator(r2)).norm() < 1e-10);
      }
    }
  }
}

TEST_CASE("channel listing") {
  const Generator gen = build_generator(fridge(0.1), baths(1e-4, 2e-4, 1e-4, Anharmonicity::harmonic()));
  std::ostringstream out;
  write_channels_csv(out, gen.channels);
  const std::string text = out.str();
  CHECK(text.rfind("alpha,omega,rate,op_norm\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 19);
}
