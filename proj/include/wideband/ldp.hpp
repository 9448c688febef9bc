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

// Large-deviations engine.
//
// A fading model enters only through the log-MGF of its rate slope
// (the first-order SNR derivative of the per-channel mutual information).
// From it we get
//   - the wideband minimum energy per nat   eta_bar = 1 / E[slope]
//   - the wideband outage exponent          E(eta) = sup_{l <= 0} { l/eta - Lambda(l) }
//   - the Cramer rate function              Lambda*(x) = sup_l { l x - Lambda(l) }
//
// All maximisations are over concave objectives, so they are solved by
// bisection on the objective's derivative after a doubling bracket.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "wideband/errors.hpp"

namespace wideband {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Log-MGF of a rate slope, with its analytic derivative and mean.
/// `evaluate` and `derivative` are only called for lambda < lambda_max.
struct LogMgf {
  double lambda_max = kInf;
  std::function<double(double)> evaluate;
  std::function<double(double)> derivative;
  double mean = 0.0;
};

enum class ExponentStatus { ok, below_eta_bar, no_convergence };

inline const char* to_string(ExponentStatus s) {
  switch (s) {
    case ExponentStatus::ok: return "OK";
    case ExponentStatus::below_eta_bar: return "BELOW_ETA_BAR";
    case ExponentStatus::no_convergence: return "NO_CONVERGENCE";
  }
  return "UNKNOWN";
}

struct ExponentResult {
  double eta_bar = 0.0;
  double eta = 0.0;
  double exponent = 0.0;
  double lambda_star = 0.0;
  ExponentStatus status = ExponentStatus::ok;
};

/// Argmax and value of a concave 1-D maximisation.
struct ConcaveSup {
  double argmax = 0.0;
  double value = 0.0;
  ExponentStatus status = ExponentStatus::ok;
};

namespace detail {

inline constexpr double kLambdaTol = 1e-12;
inline constexpr int kMaxDoublings = 200;

// Shrinks [lo, hi] around the sign change of a decreasing slope
// (slope(lo) >= 0 > slope(hi)) and returns the midpoint.
template <class Slope>
double bisect_decreasing(Slope&& slope, double lo, double hi) {
  while (hi - lo > kLambdaTol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (slope(mid) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Maximises a concave objective over lambda <= 0.
///
/// `slope` is the objective's derivative (non-increasing). If it is
/// non-negative at 0 the maximiser is 0. Otherwise the lower end of the
/// bracket starts at -1 and doubles until the slope turns non-negative,
/// giving up with `no_convergence` after 200 doublings.
template <class Objective, class Slope>
ConcaveSup sup_nonpositive(Objective&& objective, Slope&& slope) {
  if (slope(0.0) >= 0.0) return {0.0, objective(0.0), ExponentStatus::ok};

  double hi = 0.0;
  double lo = -1.0;
  int doublings = 0;
  while (!(slope(lo) >= 0.0)) {
    if (++doublings > detail::kMaxDoublings)
      return {lo, std::numeric_limits<double>::quiet_NaN(), ExponentStatus::no_convergence};
    hi = lo;
    lo *= 2.0;
  }
  const double arg = detail::bisect_decreasing(slope, lo, hi);
  return {arg, objective(arg), ExponentStatus::ok};
}

/// Wideband minimum energy per nat, 1 / E[slope].
inline double eta_bar(const LogMgf& mgf) {
  if (!(mgf.mean > 0.0))
    throw zero_mean("rate slope has non-positive mean " + std::to_string(mgf.mean));
  return 1.0 / mgf.mean;
}

/// Wideband outage exponent sup_{l <= 0} { l/eta - Lambda(l) }.
///
/// Total in eta: below eta_bar the exponent is reported as 0 with status
/// `below_eta_bar`. The returned lambda_star solves Lambda'(l) = 1/eta.
inline ExponentResult wideband_exponent(const LogMgf& mgf, double eta) {
  if (!(eta > 0.0)) throw invalid_param("energy per nat must be positive");
  const double floor_eta = eta_bar(mgf);
  if (eta < floor_eta) return {floor_eta, eta, 0.0, 0.0, ExponentStatus::below_eta_bar};

  const double target = 1.0 / eta;
  const auto sup = sup_nonpositive([&](double l) { return l * target - mgf.evaluate(l); },
                                   [&](double l) { return target - mgf.derivative(l); });
  if (sup.status != ExponentStatus::ok)
    return {floor_eta, eta, 0.0, sup.argmax, ExponentStatus::no_convergence};
  // Lambda(0) = 0, so the sup is never below 0; clip rounding noise.
  return {floor_eta, eta, std::max(0.0, sup.value), sup.argmax, ExponentStatus::ok};
}

/// Cramer rate function Lambda*(x) = sup over all lambda < lambda_max.
///
/// Throws numeric_failure when the supremum is not attained in the
/// bracketing range (e.g. x = 0 for a slope without an atom at 0, where
/// the rate function is +inf).
inline double rate_function(const LogMgf& mgf, double x) {
  if (!(x >= 0.0)) throw invalid_param("rate function argument must be non-negative");
  const auto objective = [&](double l) { return l * x - mgf.evaluate(l); };
  const auto slope = [&](double l) { return x - mgf.derivative(l); };

  if (x <= mgf.mean) {
    const auto sup = sup_nonpositive(objective, slope);
    if (sup.status != ExponentStatus::ok)
      throw numeric_failure("rate function: no maximiser found for x = " + std::to_string(x));
    return std::max(0.0, sup.value);
  }

  // x above the mean: maximiser in (0, lambda_max).
  double lo = 0.0;
  double hi = mgf.lambda_max;
  if (!std::isfinite(hi)) {
    hi = 1.0;
    int doublings = 0;
    while (slope(hi) >= 0.0) {
      if (++doublings > detail::kMaxDoublings)
        throw numeric_failure("rate function: bracketing failed for x = " + std::to_string(x));
      lo = hi;
      hi *= 2.0;
    }
  }
  const double arg = detail::bisect_decreasing(slope, lo, hi);
  return std::max(0.0, objective(arg));
}

}  // namespace wideband
