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

#include "qfridge/bath.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>
#include <tuple>

namespace qfridge {

Anharmonicity Anharmonicity::finite(double zeta) {
  if (!std::isfinite(zeta) || zeta <= 0.0) {
    std::ostringstream os;
    os << "anharmonicity zeta must be a positive number or inf (got " << zeta
       << "); inverted (transmon-like) anharmonicity makes the occupation series diverge";
    throw Error(ErrorKind::argument, os.str());
  }
  Anharmonicity a;
  a.harmonic_ = false;
  a.zeta_ = zeta;
  return a;
}

Anharmonicity Anharmonicity::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "inf" || text == "Infinite" || text == "infinity") return harmonic();
  double zeta = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), zeta);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::argument, "cannot parse zeta value '" + std::string(text) + "'");
  }
  return finite(zeta);
}

std::string Anharmonicity::to_string() const {
  if (harmonic_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << zeta_;
  return os.str();
}

void BathSpec::validate() const {
  auto finite_positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!finite_positive(temperature)) throw Error(ErrorKind::argument, "bath temperature must be > 0");
  if (!std::isfinite(kappa) || kappa < 0.0) throw Error(ErrorKind::argument, "bath coupling kappa must be >= 0");
  if (!finite_positive(cutoff)) throw Error(ErrorKind::argument, "bath cutoff must be > 0");
  if (!finite_positive(omega0)) throw Error(ErrorKind::argument, "bath omega0 must be > 0");
}

double spectral_density(const BathSpec& bath, double omega) {
  if (omega == 0.0 || !std::isfinite(omega)) {
    throw Error(ErrorKind::argument, "spectral density is not evaluated at omega = 0");
  }
  const double w = std::abs(omega);
  return 2.0 / std::numbers::pi * bath.kappa * (w / bath.omega0) * std::exp(-w / bath.cutoff);
}

namespace {

// Neumaier summation; the series terms span many decades.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

OccupationResult kerr_series(double beta, double zeta, double omega) {
  CompensatedSum s0;
  CompensatedSum s1;
  for (std::int64_t n = 0; n < kMaxSeriesTerms; ++n) {
    const double nd = static_cast<double>(n);
    const double term = std::exp(-beta * (omega * nd + omega * nd * nd / zeta));
    s0.add(term);
    s1.add(nd * term);
    if (n == 0) continue;

    const double z0 = s0.value();
    const double z1 = s1.value();
    // t_{m+1}/t_m = exp(-beta*omega*(1 + (2m+1)/zeta)) decreases with m, so
    // the tail past n is dominated by a geometric series with the ratio at n.
    const double q = std::exp(-beta * omega * (1.0 + (2.0 * nd + 1.0) / zeta));
    const double tail0 = term * q / (1.0 - q);
    const double tail1 = term * (nd * q / (1.0 - q) + q / ((1.0 - q) * (1.0 - q)));
    const double value = z1 / z0;
    const double bound = (tail1 + value * tail0) / z0;
    if (term < 1e-16 * z0 && bound <= 1e-15 * value) {
      return OccupationResult{value, n + 1, bound};
    }
    if (term == 0.0) return OccupationResult{value, n + 1, 0.0};
  }
  std::ostringstream os;
  os << "occupation series did not converge within " << kMaxSeriesTerms
     << " terms (beta*omega = " << beta * omega << ", zeta = " << zeta << ")";
  throw Error(ErrorKind::solver, os.str());
}

class OccupationCache {
 public:
  using Key = std::tuple<double, double, double>;

  OccupationResult get(double temperature, Anharmonicity zeta, double omega) {
    const Key key{omega, temperature, zeta.value()};
    {
      std::shared_lock lock(mutex_);
      if (auto it = table_.find(key); it != table_.end()) return it->second;
    }
    const OccupationResult r = compute_occupation(temperature, zeta, omega);
    std::unique_lock lock(mutex_);
    table_.emplace(key, r);
    return r;
  }

 private:
  std::shared_mutex mutex_;
  std::map<Key, OccupationResult> table_;
};

OccupationCache& cache() {
  static OccupationCache instance;
  return instance;
}

}  // namespace

OccupationResult compute_occupation(double temperature, Anharmonicity zeta, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw Error(ErrorKind::argument, "occupation requires omega > 0");
  }
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorKind::argument, "occupation requires T > 0");
  }
  const double beta = 1.0 / temperature;
  if (zeta.is_harmonic()) {
    return OccupationResult{1.0 / std::expm1(beta * omega), 0, 0.0};
  }
  return kerr_series(beta, zeta.value(), omega);
}

OccupationResult occupation(const BathSpec& bath, double omega) {
  return cache().get(bath.temperature, bath.zeta, omega);
}

double decay_rate(const BathSpec& bath, double omega) {
  const double j = spectral_density(bath, omega);
  if (j == 0.0) return 0.0;
  const double n = occupation(bath, std::abs(omega)).value;
  return std::numbers::pi / 2.0 * j * (omega > 0.0 ? n + 1.0 : n);
}

}  // namespace qfridge
