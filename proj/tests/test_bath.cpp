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
#include <limits>
#include <random>

#include "doctest.h"
#include "qfridge/bath.hpp"
#include "support.hpp"

using namespace qfridge;
using qfridge::testing::occupation_oracle;

namespace {

double occ(double omega, double t, double zeta) {
  const Anharmonicity z = std::isinf(zeta) ? Anharmonicity::harmonic() : Anharmonicity::finite(zeta);
  return compute_occupation(t, z, omega).value;
}

BathSpec bath(double t, double kappa, Anharmonicity zeta, double omega0 = 1.0) {
  BathSpec b;
  b.temperature = t;
  b.kappa = kappa;
  b.zeta = zeta;
  b.omega0 = omega0;
  return b;
}

const double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("Kerr occupation reference values") {
  // 50-digit references.
  CHECK(occ(1, 1, 50) == doctest::Approx(0.53003793212906801785).epsilon(1e-14));
  CHECK(occ(1, 1, 10) == doctest::Approx(0.40951935413850556597).epsilon(1e-14));
  CHECK(occ(1, 1, 100) == doctest::Approx(0.55394170109045569376).epsilon(1e-14));
  CHECK(occ(1, 2, 50) == doctest::Approx(1.3329349862978243016).epsilon(1e-14));
  CHECK(occ(1, 1, 1000) == doctest::Approx(0.5789420252261896513).epsilon(1e-14));
  CHECK(occ(1, 1, kInf) == doctest::Approx(0.58197670686932642439).epsilon(1e-15));
}

TEST_CASE("harmonic occupation is Bose-Einstein") {
  for (double w : {0.1, 0.5, 1.0, 2.0, 7.0})
    for (double t : {0.3, 1.0, 2.0, 10.0}) CHECK(occ(w, t, kInf) == doctest::Approx(1.0 / std::expm1(w / t)).epsilon(1e-14));
  CHECK(std::abs(occ(1, 2, 1e9) - 1.0 / std::expm1(0.5)) < 1e-6);
}

TEST_CASE("occupation matches the extended-precision oracle") {
  std::mt19937_64 rng(20260501);
  std::uniform_real_distribution<double> uw(0.5, 4.0), ut(0.5, 2.0), ulog(1.0, 4.0);
  for (int i = 0; i < 40; ++i) {
    const double w = uw(rng), t = ut(rng), z = std::pow(10.0, ulog(rng));
    const OccupationResult r = compute_occupation(t, Anharmonicity::finite(z), w);
    const double exact = occupation_oracle(w, t, z);
    CHECK(std::abs(r.value - exact) <= 1e-12 * exact);
    // The reported truncation bound must dominate the actual error up to rounding.
    CHECK(std::abs(r.value - exact) <= r.truncation_bound + 64 * std::numeric_limits<double>::epsilon() * exact);
    CHECK(r.terms_used > 0);
  }
}

TEST_CASE("occupation grows toward the harmonic value and with temperature") {
  const double zetas[] = {1, 5, 10, 50, 100, 1000, 1e4, 1e6, kInf};
  for (double w : {0.5, 1.0, 2.0}) {
    for (double t : {0.5, 1.0, 2.0}) {
      double prev = 0.0;
      for (double z : zetas) {
        const double n = occ(w, t, z);
        CHECK(n > prev);
        prev = n;
      }
    }
  }
  for (double z : {10.0, 100.0, kInf}) {
    CHECK(occ(1, 0.5, z) < occ(1, 1, z));
    CHECK(occ(1, 1, z) < occ(1, 2, z));
    CHECK(occ(2, 1, z) < occ(1, 1, z));
  }
}

TEST_CASE("extreme arguments stay finite") {
  CHECK(occ(1, 1000, 10) > 0.0);
  CHECK(std::isfinite(occ(1, 1000, 10)));
  CHECK(occ(50, 0.5, 10) >= 0.0);
  CHECK(occ(50, 0.5, kInf) == doctest::Approx(1.0 / std::expm1(100.0)));
  CHECK(occ(1e-3, 1, 1e4) == doctest::Approx(occupation_oracle(1e-3, 1, 1e4)).epsilon(1e-12));
}

TEST_CASE("anharmonicity values") {
  CHECK(Anharmonicity::harmonic().is_harmonic());
  CHECK(std::isinf(Anharmonicity::harmonic().value()));
  CHECK(Anharmonicity::parse("inf").is_harmonic());
  CHECK(Anharmonicity::parse("50").value() == 50.0);
  CHECK(Anharmonicity::parse("inf").to_string() == "inf");
  CHECK(Anharmonicity::finite(50) < Anharmonicity::harmonic());
  CHECK(Anharmonicity::finite(50) == Anharmonicity::parse("50"));
  for (double bad : {0.0, -3.0, std::nan("")}) {
    try {
      (void)Anharmonicity::finite(bad);
      FAIL("accepted zeta " << bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::argument);
    }
  }
  CHECK_THROWS_AS(Anharmonicity::parse("abc"), Error);
  CHECK_THROWS_AS(Anharmonicity::parse("-1"), Error);
}

TEST_CASE("Ohmic spectral density") {
  const BathSpec b = bath(1, 1e-4, Anharmonicity::harmonic());
  CHECK(spectral_density(b, 1.0) == doctest::Approx(6.3649246114465449024e-5).epsilon(1e-14));
  CHECK(spectral_density(b, -1.0) == spectral_density(b, 1.0));
  CHECK_THROWS_AS(spectral_density(b, 0.0), Error);
  const BathSpec b2 = bath(1, 1e-4, Anharmonicity::harmonic(), 2.0);
  CHECK(spectral_density(b2, 2.0) == doctest::Approx(spectral_density(b, 1.0) * std::exp(-1.0 / 5000)));
}

TEST_CASE("harmonic rates satisfy detailed balance") {
  for (double w : {0.9, 1.0, 2.1}) {
    for (double t : {0.5, 1.0, 2.0}) {
      const BathSpec b = bath(t, 1e-4, Anharmonicity::harmonic());
      const double ratio = decay_rate(b, w) / decay_rate(b, -w);
      CHECK(std::abs(ratio / std::exp(w / t) - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("Kerr rates favour emission beyond detailed balance") {
  for (double z : {10.0, 50.0, 1000.0}) {
    const BathSpec b = bath(1, 1e-4, Anharmonicity::finite(z));
    const double n = occupation(b, 1.0).value;
    const double ratio = decay_rate(b, 1.0) / decay_rate(b, -1.0);
    CHECK(ratio == doctest::Approx((n + 1) / n).epsilon(1e-13));
    CHECK(ratio > std::exp(1.0));
  }
}

TEST_CASE("rate prefactor") {
  const BathSpec b = bath(1, 1e-4, Anharmonicity::harmonic());
  const double n = 1.0 / std::expm1(1.0);
  CHECK(decay_rate(b, 1.0) == doctest::Approx(M_PI / 2 * spectral_density(b, 1.0) * (n + 1)).epsilon(1e-14));
  CHECK(decay_rate(b, -1.0) == doctest::Approx(M_PI / 2 * spectral_density(b, 1.0) * n).epsilon(1e-14));
  CHECK(decay_rate(bath(1, 0, Anharmonicity::harmonic()), 1.0) == 0.0);
}

TEST_CASE("memoized occupation equals direct evaluation") {
  const BathSpec b = bath(1.3, 1e-4, Anharmonicity::finite(37));
  for (int k = 0; k < 3; ++k) CHECK(occupation(b, 1.7).value == compute_occupation(1.3, Anharmonicity::finite(37), 1.7).value);
}

TEST_CASE("bath validation") {
  CHECK_NOTHROW(bath(1, 1e-4, Anharmonicity::harmonic()).validate());
  CHECK_THROWS_AS(bath(0, 1e-4, Anharmonicity::harmonic()).validate(), Error);
  CHECK_THROWS_AS(bath(1, -1e-4, Anharmonicity::harmonic()).validate(), Error);
  BathSpec b = bath(1, 1e-4, Anharmonicity::harmonic());
  b.cutoff = 0;
  CHECK_THROWS_AS(b.validate(), Error);
  CHECK_THROWS_AS(compute_occupation(1, Anharmonicity::harmonic(), 0.0), Error);
}
