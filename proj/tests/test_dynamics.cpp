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
#include <random>
#include <vector>

#include "doctest.h"
#include "qfridge/dynamics.hpp"
#include "support.hpp"

using namespace qfridge;

namespace {

RefrigeratorSpec fridge(double g) {
  RefrigeratorSpec s;
  s.g = g;
  return s;
}

BathSet baths(double kc, double kh, double kw, Anharmonicity z) {
  BathSet b;
  const double kappa[3] = {kc, kh, kw};
  const double temp[3] = {1, 1, 2};
  const double omega0[3] = {1, 2, 1};
  for (int a = 0; a < 3; ++a) {
    b[a].kappa = kappa[a] * omega0[a];
    b[a].temperature = temp[a];
    b[a].zeta = z;
    b[a].omega0 = omega0[a];
  }
  return b;
}

Generator steady_regime(Anharmonicity z) { return build_generator(fridge(0.1), baths(1e-4, 1e-4, 1e-4, z)); }

Mat8 unitary_evolution(const Mat8& h, const Mat8& rho, double t) {
  Eigen::SelfAdjointEigenSolver<Mat8> es(h);
  const Mat8 u = es.eigenvectors() *
                 es.eigenvalues().unaryExpr([t](double e) { return std::polar(1.0, -e * t); }).asDiagonal() *
                 es.eigenvectors().adjoint();
  return u * rho * u.adjoint();
}

}  // namespace

TEST_CASE("density matrix validation") {
  Mat8 rho = Mat8::Identity() / 8.0;
  CHECK_NOTHROW(DensityMatrix::checked(rho));
  Mat8 bad = rho;
  bad(0, 0) += 1e-6;
  CHECK_THROWS_AS(DensityMatrix::checked(bad), Error);
  bad = rho;
  bad(0, 1) = cplx(1e-6, 0);
  CHECK_THROWS_AS(DensityMatrix::checked(bad), Error);
  bad = Mat8::Zero();
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  try {
    (void)DensityMatrix::checked(bad);
    FAIL("negative state accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invariant);
  }
  const auto d = diagnose_state(rho);
  CHECK(d.min_eigenvalue == doctest::Approx(0.125));
}

TEST_CASE("product Gibbs state") {
  const Generator gen = steady_regime(Anharmonicity::harmonic());
  const Mat8 rho = initial_product_gibbs(gen.fridge, gen.baths).matrix();
  CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK((rho - Mat8(rho.diagonal().asDiagonal())).norm() == 0.0);
  const double pc = 1.0 / (1.0 + std::exp(-1.0));
  const double ph = 1.0 / (1.0 + std::exp(-2.0));
  const double pw = 1.0 / (1.0 + std::exp(-0.5));
  CHECK(rho(0, 0).real() == doctest::Approx(pc * ph * pw).epsilon(1e-15));
  CHECK(rho(7, 7).real() == doctest::Approx((1 - pc) * (1 - ph) * (1 - pw)).epsilon(1e-15));
  CHECK(1 - pc == doctest::Approx(0.26894142136999512075).epsilon(1e-15));
}

TEST_CASE("closed evolution is unitary") {
  std::mt19937_64 rng(5);
  const Generator gen = build_generator(fridge(0.8), baths(0, 0, 0, Anharmonicity::harmonic()));
  const Mat8 rho0 = testing::random_density(rng);
  const std::vector<double> times{0.0, 0.5, 3.0, 17.0, 40.0};
  const Trajectory tr = evolve(gen, DensityMatrix::checked(rho0), times);
  REQUIRE(tr.states.size() == times.size());
  CHECK((tr.states[0].matrix() - rho0).norm() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Mat8> es0(rho0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Mat8& rho = tr.states[i].matrix();
    CHECK((rho - unitary_evolution(gen.hamiltonian, rho0, times[i])).norm() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Mat8> es(rho);
    CHECK((es.eigenvalues() - es0.eigenvalues()).norm() < 1e-12);
  }
}

TEST_CASE("lab and interaction frames agree") {
  std::mt19937_64 rng(9);
  const Generator gen = build_generator(fridge(0.8), baths(1e-2, 1e-3, 5e-2, Anharmonicity::finite(20)));
  REQUIRE(gen.covariant);
  const Mat8 rho0 = testing::random_density(rng);
  const std::vector<double> times{1.0, 5.0, 20.0};
  EvolveOptions tight;
  tight.rel_tol = 1e-11;
  EvolveOptions lab = tight;
  lab.force_lab_frame = true;
  const Trajectory a = evolve(gen, DensityMatrix::checked(rho0), times, tight);
  const Trajectory b = evolve(gen, DensityMatrix::checked(rho0), times, lab);
  CHECK(a.diagnostics.interaction_frame);
  CHECK_FALSE(b.diagnostics.interaction_frame);
  for (std::size_t i = 0; i < times.size(); ++i) CHECK(trace_distance(a.states[i].matrix(), b.states[i].matrix()) < 1e-9);
}

TEST_CASE("evolution is linear and contractive") {
  std::mt19937_64 rng(17);
  const Generator gen = build_generator(fridge(0.8), baths(1e-2, 2e-3, 1e-1, Anharmonicity::finite(50)));
  const Mat8 r1 = testing::random_density(rng), r2 = testing::random_density(rng);
  const double a = 0.3;
  std::vector<double> times;
  for (int k = 1; k <= 40; ++k) times.push_back(2.5 * k);
  const Trajectory t1 = evolve(gen, DensityMatrix::checked(r1), times);
  const Trajectory t2 = evolve(gen, DensityMatrix::checked(r2), times);
  const Trajectory tm = evolve(gen, DensityMatrix::checked(a * r1 + (1 - a) * r2), times);
  double prev = trace_distance(r1, r2);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Mat8 mix = a * t1.states[i].matrix() + (1 - a) * t2.states[i].matrix();
    CHECK((tm.states[i].matrix() - mix).cwiseAbs().maxCoeff() < 1e-8);
    const double d = trace_distance(t1.states[i].matrix(), t2.states[i].matrix());
    CHECK(d <= prev + 1e-9);
    prev = d;
  }
}

TEST_CASE("trajectory reaches the null-space steady state") {
  for (auto z : {Anharmonicity::harmonic(), Anharmonicity::finite(50)}) {
    const Generator gen = steady_regime(z);
    const DensityMatrix ss = steady_state(gen);
    CHECK(stationarity_residual(gen, ss.matrix()) <= 1e-11 * gen.matrix.operatorNorm());
    const double t_end = 50.0 / slowest_relaxation_rate(gen.matrix);
    const std::vector<double> times{t_end};
    const Trajectory tr = evolve(gen, initial_product_gibbs(gen.fridge, gen.baths), times);
    CHECK(trace_distance(tr.states.back().matrix(), ss.matrix()) <= 1e-8);
    CHECK(tr.diagnostics.max_trace_drift < 1e-8);
  }
}

TEST_CASE("stationary detector stops early") {
  const Generator gen = steady_regime(Anharmonicity::harmonic());
  std::vector<double> times;
  for (int k = 1; k <= 200; ++k) times.push_back(5e3 * k);
  EvolveOptions opts;
  opts.stationary_tol = 1e-12;
  const Trajectory tr = evolve(gen, initial_product_gibbs(gen.fridge, gen.baths), times, opts);
  CHECK(tr.diagnostics.stationary);
  CHECK(tr.states.size() < times.size());
  CHECK(stationarity_residual(gen, tr.states.back().matrix()) < 1e-12);
}

TEST_CASE("observer can stop a run") {
  const Generator gen = steady_regime(Anharmonicity::harmonic());
  const std::vector<double> times{1, 2, 3, 4, 5};
  int seen = 0;
  evolve(gen, initial_product_gibbs(gen.fridge, gen.baths), times, {}, [&](double, const DensityMatrix&) {
    return ++seen < 2;
  });
  CHECK(seen == 2);
}

TEST_CASE("sample times are validated") {
  const Generator gen = steady_regime(Anharmonicity::harmonic());
  const DensityMatrix rho = initial_product_gibbs(gen.fridge, gen.baths);
  const std::vector<double> decreasing{1.0, 0.5};
  const std::vector<double> negative{-1.0, 1.0};
  const std::vector<double> none;
  CHECK_THROWS_AS(evolve(gen, rho, decreasing), Error);
  CHECK_THROWS_AS(evolve(gen, rho, negative), Error);
  CHECK_THROWS_AS(evolve(gen, rho, none), Error);
}

TEST_CASE("uncoupled qubits thermalize with their own baths") {
  const Generator harmonic = build_generator(fridge(0.0), baths(1e-4, 1e-4, 1e-4, Anharmonicity::harmonic()));
  const Mat8 gibbs = initial_product_gibbs(harmonic.fridge, harmonic.baths).matrix();
  CHECK(trace_distance(steady_state(harmonic).matrix(), gibbs) <= 1e-10);

  for (double z : {10.0, 50.0}) {
    const Generator gen = build_generator(fridge(0.0), baths(1e-4, 1e-4, 1e-4, Anharmonicity::finite(z)));
    const Mat8 rho = steady_state(gen).matrix();
    for (Qubit q : kQubits) {
      const int bit = 2 - index_of(q);
      double p0 = 0, p1 = 0;
      for (int i = 0; i < kDim; ++i) ((i >> bit) & 1 ? p1 : p0) += rho(i, i).real();
      const double n = occupation(gen.baths[index_of(q)], gen.fridge.energy(q)).value;
      CHECK(std::abs(p1 / p0 - n / (n + 1)) <= 1e-10);
    }
  }
}

TEST_CASE("steady state needs a unique fixed point") {
  const Generator closed = build_generator(fridge(0.1), baths(0, 0, 0, Anharmonicity::harmonic()));
  try {
    (void)steady_state(closed);
    FAIL("degenerate null space accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::solver);
  }
}

TEST_CASE("trace distance") {
  Mat8 a = Mat8::Zero(), b = Mat8::Zero();
  a(0, 0) = 1;
  b(1, 1) = 1;
  CHECK(trace_distance(a, b) == doctest::Approx(1.0));
  CHECK(trace_distance(a, a) == 0.0);
  std::mt19937_64 rng(1);
  const Mat8 r = testing::random_density(rng), s = testing::random_density(rng);
  CHECK(trace_distance(r, s) == doctest::Approx(testing::trace_norm_distance(r, s)).epsilon(1e-12));
}
