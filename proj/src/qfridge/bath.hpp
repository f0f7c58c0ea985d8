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

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "qfridge/types.hpp"

namespace qfridge {

/// Kerr anharmonicity parameter zeta of the bath modes. A finite value must
/// be strictly positive; the harmonic limit is a distinct state rather than
/// a large number.
class Anharmonicity {
 public:
  static Anharmonicity harmonic() { return Anharmonicity(); }
  static Anharmonicity finite(double zeta);
  /// Accepts a positive number or the token "inf".
  static Anharmonicity parse(std::string_view text);

  bool is_harmonic() const { return harmonic_; }
  /// +infinity in the harmonic limit.
  double value() const {
    return harmonic_ ? std::numeric_limits<double>::infinity() : zeta_;
  }
  std::string to_string() const;

  friend bool operator==(const Anharmonicity& a, const Anharmonicity& b) {
    return a.value() == b.value();
  }
  friend std::partial_ordering operator<=>(const Anharmonicity& a, const Anharmonicity& b) {
    return a.value() <=> b.value();
  }

 private:
  Anharmonicity() = default;
  bool harmonic_ = true;
  double zeta_ = 0.0;
};

/// Per-qubit bath. `omega0` is the bare energy of the qubit the bath couples to.
struct BathSpec {
  double temperature = 1.0;
  double kappa = 0.0;
  Anharmonicity zeta = Anharmonicity::harmonic();
  double cutoff = 5000.0;
  double omega0 = 1.0;

  void validate() const;
};

struct OccupationResult {
  double value = 0.0;
  std::int64_t terms_used = 0;
  /// Upper bound on |value - exact| from the dropped tail of both series.
  double truncation_bound = 0.0;
};

/// Ohmic density (2/pi) kappa (|w|/omega0) exp(-|w|/cutoff). w == 0 rejected.
double spectral_density(const BathSpec& bath, double omega);

/// Thermal occupation <n> of a Kerr mode of frequency omega > 0. Results are
/// memoized by (omega, T, zeta).
OccupationResult occupation(const BathSpec& bath, double omega);

/// Same as occupation() without the cache.
OccupationResult compute_occupation(double temperature, Anharmonicity zeta, double omega);

/// Emission (omega > 0) or absorption (omega < 0) rate of a channel.
double decay_rate(const BathSpec& bath, double omega);

/// Hard cap on the number of series terms.
inline constexpr std::int64_t kMaxSeriesTerms = 10'000'000;

}  // namespace qfridge
