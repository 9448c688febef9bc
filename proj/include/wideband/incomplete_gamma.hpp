// SPDX-License-Identifier: Apache-2.0
//
// wideband-outage: outage exponents of wideband slow-fading parallel channels
// Copyright (C) 2026 The wideband-outage authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "wideband/errors.hpp"

namespace wideband {

namespace detail {

inline constexpr double kGammaEps = 1e-16;
inline constexpr int kGammaMaxIter = 1000000;

// log of the common prefactor x^a e^-x / Gamma(a)
inline double gamma_log_prefactor(double a, double x) {
  return a * std::log(x) - x - std::lgamma(a);
}

// P(a, x) by the power series, for x < a + 1.
inline double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kGammaMaxIter; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kGammaEps)
      return sum * std::exp(gamma_log_prefactor(a, x));
  }
  throw numeric_failure("incomplete gamma series did not converge");
}

// Q(a, x) by the Lentz continued fraction, for x >= a + 1.
inline double gamma_q_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kGammaEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kGammaMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kGammaEps) return std::exp(gamma_log_prefactor(a, x)) * h;
  }
  throw numeric_failure("incomplete gamma continued fraction did not converge");
}

}  // namespace detail

/// Regularised lower incomplete gamma P(a, x).
inline double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0)) throw invalid_param("incomplete gamma needs a > 0");
  if (!(x >= 0.0)) throw invalid_param("incomplete gamma needs x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return detail::gamma_p_series(a, x);
  return 1.0 - detail::gamma_q_fraction(a, x);
}

/// Per-channel Gamma law of the rate slope: Gamma(shape, 1/rate).
/// Rayleigh (1, 1), Nakagami-m (m, m), white n_t x n_r MIMO (n_t n_r, n_t).
struct GammaFamily {
  double shape = 1.0;
  double rate = 1.0;

  static GammaFamily rayleigh() { return {1.0, 1.0}; }
  static GammaFamily nakagami(double m) { return {m, m}; }
  static GammaFamily white_mimo(int n_t, int n_r) {
    return {static_cast<double>(n_t) * n_r, static_cast<double>(n_t)};
  }
};

/// Exact linearised outage probability Pr[(rho/K) sum_k S_k <= rho/eta]
/// = P(shape K, rate K / eta).
inline double gamma_oracle(int K, double eta, GammaFamily family = GammaFamily::rayleigh()) {
  if (K < 1) throw invalid_param("K must be >= 1");
  if (!(eta > 0.0)) throw invalid_param("energy per nat must be positive");
  if (!(family.shape > 0.0 && family.rate > 0.0)) throw invalid_param("bad Gamma family");
  return regularized_gamma_p(family.shape * K, family.rate * K / eta);
}

}  // namespace wideband
