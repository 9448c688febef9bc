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

// Scalar fading families with unit-mean squared gain |H|^2:
//   Rayleigh       |H|^2 ~ Exp(1)
//   Rician(kappa)  H ~ CN(kappa, 1 - kappa^2)
//   Nakagami(m)    |H|^2 ~ Gamma(m, 1/m)
// For coherent Gaussian inputs the rate slope equals |H|^2, so the
// log-MGFs below feed the large-deviations engine directly.

#include <algorithm>
#include <cmath>
#include <string>

#include "wideband/errors.hpp"
#include "wideband/ldp.hpp"
#include "wideband/random.hpp"

namespace wideband::scalar {

enum class FadingFamily { rayleigh, rician, nakagami };

inline const char* to_string(FadingFamily f) {
  switch (f) {
    case FadingFamily::rayleigh: return "rayleigh";
    case FadingFamily::rician: return "rician";
    case FadingFamily::nakagami: return "nakagami";
  }
  return "unknown";
}

class ScalarFadingModel {
 public:
  static ScalarFadingModel rayleigh() { return {FadingFamily::rayleigh, 0.0, 1.0}; }

  /// kappa in [0, 1); kappa = 1 (pure line of sight) has no fading at all.
  static ScalarFadingModel rician(double kappa) {
    if (!(kappa >= 0.0 && kappa < 1.0))
      throw invalid_param("Rician kappa must lie in [0, 1), got " + std::to_string(kappa));
    return {FadingFamily::rician, kappa, 1.0};
  }

  static ScalarFadingModel nakagami(double m) {
    if (!(m >= 0.5) || !std::isfinite(m))
      throw invalid_param("Nakagami m must be finite and >= 1/2, got " + std::to_string(m));
    return {FadingFamily::nakagami, 0.0, m};
  }

  FadingFamily family() const { return family_; }
  double kappa() const { return kappa_; }
  double m() const { return m_; }

 private:
  ScalarFadingModel(FadingFamily f, double kappa, double m) : family_(f), kappa_(kappa), m_(m) {}

  FadingFamily family_;
  double kappa_;
  double m_;
};

/// Log-MGF of |H|^2 (mean 1 for every family).
inline LogMgf log_mgf(const ScalarFadingModel& model) {
  switch (model.family()) {
    case FadingFamily::rayleigh:
      return {1.0, [](double l) { return -std::log1p(-l); },
              [](double l) { return 1.0 / (1.0 - l); }, 1.0};
    case FadingFamily::rician: {
      const double k2 = model.kappa() * model.kappa();
      const double c = 1.0 - k2;
      return {1.0 / c,
              [k2, c](double l) { return k2 * l / (1.0 - c * l) - std::log1p(-c * l); },
              [k2, c](double l) {
                const double d = 1.0 - c * l;
                return k2 / (d * d) + c / d;
              },
              1.0};
    }
    case FadingFamily::nakagami: {
      const double m = model.m();
      return {m, [m](double l) { return -m * std::log1p(-l / m); },
              [m](double l) { return 1.0 / (1.0 - l / m); }, 1.0};
    }
  }
  throw invalid_param("unknown fading family");
}

/// 1/eta - 1 + log(eta), the Rayleigh exponent.
inline double rayleigh_exponent(double eta) { return 1.0 / eta - 1.0 + std::log(eta); }

/// Closed-form wideband outage exponent for eta >= 1 (= eta_bar).
inline double closed_form_exponent(const ScalarFadingModel& model, double eta) {
  if (!(eta >= 1.0))
    throw invalid_param("closed-form exponent needs eta >= 1, got " + std::to_string(eta));
  switch (model.family()) {
    case FadingFamily::rayleigh:
      return rayleigh_exponent(eta);
    case FadingFamily::nakagami:
      return model.m() * rayleigh_exponent(eta);
    case FadingFamily::rician: {
      const double k2 = model.kappa() * model.kappa();
      const double c = 1.0 - k2;
      const double root = std::sqrt(1.0 + (4.0 * k2 / eta) / (c * c));
      // cancels to ~1e-16 at eta = 1; the exponent is never negative
      return std::max(0.0, 1.0 / (c * eta) + k2 / c - root + std::log(c * eta / 2.0) + std::log1p(root));
    }
  }
  throw invalid_param("unknown fading family");
}

/// One draw of |H|^2.
inline double sample_squared_gain(const ScalarFadingModel& model, Rng& rng) {
  switch (model.family()) {
    case FadingFamily::rayleigh:
      return sample_exponential(rng);
    case FadingFamily::rician: {
      const double k = model.kappa();
      const double s = std::sqrt((1.0 - k * k) / 2.0);
      const double re = k + s * sample_standard_normal(rng);
      const double im = s * sample_standard_normal(rng);
      return re * re + im * im;
    }
    case FadingFamily::nakagami:
      return sample_gamma(model.m(), rng) / model.m();
  }
  return 0.0;
}

}  // namespace wideband::scalar
