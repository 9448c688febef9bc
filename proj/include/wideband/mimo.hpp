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

// MIMO wideband outage exponents.
//
// With input covariance (rho/K) Sigma (tr Sigma = 1) the rate slope of one
// parallel channel is tr(H Sigma H^H) = V^H (I_nr (x) Sigma) V, where
// V = vec(H^H) ~ CN(0, Psi). Its law is a weighted sum of Exp(1) variables
// with weights mu_i = eigenvalues of (I (x) Sigma) Psi, hence
//   Lambda(l) = -sum_i log(1 - l mu_i),   eta_bar = 1 / sum_i mu_i.
//
// Separable correlation uses Psi = Psi_r (x) Psi_t, whose weights are the
// products mu_i(Sigma Psi_t) mu_j(Psi_r).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wideband/errors.hpp"
#include "wideband/ldp.hpp"
#include "wideband/matrix.hpp"
#include "wideband/search.hpp"

namespace wideband::mimo {

/// Channel correlation Psi (dimension n_t n_r, ordered as vec(H^H), i.e.
/// n_r blocks of n_t transmit entries) and input covariance Sigma (n_t).
class CovariancePair {
 public:
  static CovariancePair full(HermitianMatrix psi, HermitianMatrix sigma, int n_t, int n_r) {
    check_counts(n_t, n_r);
    if (psi.dim() != static_cast<std::size_t>(n_t * n_r))
      throw invalid_param("psi must be (n_t n_r) x (n_t n_r)");
    if (sigma.dim() != static_cast<std::size_t>(n_t)) throw invalid_param("sigma must be n_t x n_t");
    CovariancePair pair(std::move(psi), std::move(sigma), n_t, n_r);
    pair.validate();
    return pair;
  }

  /// Psi = psi_r (x) psi_t.
  static CovariancePair separable(HermitianMatrix psi_t, HermitianMatrix psi_r,
                                  HermitianMatrix sigma) {
    const int n_t = static_cast<int>(psi_t.dim());
    const int n_r = static_cast<int>(psi_r.dim());
    check_counts(n_t, n_r);
    if (sigma.dim() != psi_t.dim()) throw invalid_param("sigma must match psi_t");
    HermitianMatrix psi(kron(psi_r.matrix(), psi_t.matrix()));
    CovariancePair pair(std::move(psi), std::move(sigma), n_t, n_r);
    pair.psi_t_ = std::move(psi_t);
    pair.psi_r_ = std::move(psi_r);
    pair.validate();
    return pair;
  }

  int n_t() const { return n_t_; }
  int n_r() const { return n_r_; }
  const HermitianMatrix& psi() const { return psi_; }
  const HermitianMatrix& sigma() const { return sigma_; }
  bool is_separable() const { return psi_t_.has_value(); }
  const HermitianMatrix& psi_t() const { return psi_t_.value(); }
  const HermitianMatrix& psi_r() const { return psi_r_.value(); }

 private:
  CovariancePair(HermitianMatrix psi, HermitianMatrix sigma, int n_t, int n_r)
      : psi_(std::move(psi)), sigma_(std::move(sigma)), n_t_(n_t), n_r_(n_r) {}

  static void check_counts(int n_t, int n_r) {
    if (n_t < 1 || n_r < 1) throw invalid_param("antenna counts must be >= 1");
    if (n_t * n_r > static_cast<int>(HermitianMatrix::kMaxDim))
      throw invalid_param("n_t * n_r must not exceed 64");
  }

  void validate() const {
    auto psi_eig = hermitian_eigenvalues(psi_).eigenvalues;
    clip_psd_spectrum(psi_eig, "psi");
    auto sigma_eig = hermitian_eigenvalues(sigma_).eigenvalues;
    clip_psd_spectrum(sigma_eig, "sigma");
    if (std::abs(sigma_.trace() - 1.0) > 1e-9)
      throw invariant_violation("sigma must have unit trace, got " + std::to_string(sigma_.trace()));
  }

  HermitianMatrix psi_;
  HermitianMatrix sigma_;
  int n_t_;
  int n_r_;
  std::optional<HermitianMatrix> psi_t_;
  std::optional<HermitianMatrix> psi_r_;
};

/// Sigma = I / n_t.
inline HermitianMatrix white_input(int n_t) {
  return HermitianMatrix((1.0 / n_t) * CMatrix::identity(static_cast<std::size_t>(n_t)));
}

/// Two-by-two separable example Psi = [[1,d],[d,1]] (x) [[1,d],[d,1]] with
/// white input; |d| <= 1.
inline CovariancePair kronecker_example(double delta) {
  if (!(std::abs(delta) <= 1.0)) throw invalid_param("correlation must satisfy |delta| <= 1");
  HermitianMatrix factor(CMatrix::two_by_two(delta));
  return CovariancePair::separable(factor, factor, white_input(2));
}

/// Weights mu_i of the rate slope (descending, PSD-clipped).
inline std::vector<double> slope_eigenvalues(const CovariancePair& pair) {
  const CMatrix sigma_root = psd_sqrt(pair.sigma(), "sigma");
  std::vector<double> mu;
  if (pair.is_separable()) {
    const CMatrix tx = sigma_root * pair.psi_t().matrix() * sigma_root;
    auto a = hermitian_eigenvalues(HermitianMatrix(tx)).eigenvalues;
    auto b = hermitian_eigenvalues(pair.psi_r()).eigenvalues;
    clip_psd_spectrum(a, "Sigma^1/2 Psi_t Sigma^1/2");
    clip_psd_spectrum(b, "psi_r");
    mu.reserve(a.size() * b.size());
    for (double x : a)
      for (double y : b) mu.push_back(x * y);
    std::sort(mu.begin(), mu.end(), std::greater<>());
  } else {
    const CMatrix s = kron(CMatrix::identity(static_cast<std::size_t>(pair.n_r())), sigma_root);
    const CMatrix phi = s * pair.psi().matrix() * s;
    mu = hermitian_eigenvalues(HermitianMatrix(phi)).eigenvalues;
    clip_psd_spectrum(mu, "Phi");
  }
  return mu;
}

/// tr((I (x) Sigma) Psi), computed directly from the matrices.
inline double slope_mean_trace(const CovariancePair& pair) {
  if (pair.is_separable())
    return pair.psi_r().trace() * (pair.sigma().matrix() * pair.psi_t().matrix()).trace().real();
  const CMatrix block =
      kron(CMatrix::identity(static_cast<std::size_t>(pair.n_r())), pair.sigma().matrix());
  return (block * pair.psi().matrix()).trace().real();
}

/// Log-MGF of a weighted sum of Exp(1) variables.
inline LogMgf spectral_log_mgf(std::vector<double> mu) {
  double mean = 0.0;
  double mu_max = 0.0;
  for (double m : mu) {
    mean += m;
    mu_max = std::max(mu_max, m);
  }
  LogMgf mgf;
  mgf.lambda_max = mu_max > 0.0 ? 1.0 / mu_max : kInf;
  mgf.mean = mean;
  mgf.evaluate = [mu](double l) {
    double s = 0.0;
    for (double m : mu) s -= std::log1p(-l * m);
    return s;
  };
  mgf.derivative = [mu](double l) {
    double s = 0.0;
    for (double m : mu) s += m / (1.0 - l * m);
    return s;
  };
  return mgf;
}

/// Lambda(l) = -log det(I - l (I (x) Sigma) Psi).
inline LogMgf correlated_log_mgf(const CovariancePair& pair) {
  return spectral_log_mgf(slope_eigenvalues(pair));
}

inline ExponentResult correlated_exponent(const CovariancePair& pair, double eta) {
  return wideband_exponent(correlated_log_mgf(pair), eta);
}

/// Spatially white Rayleigh fading with white input:
/// n_t n_r [1/(n_r eta) - 1 + log(n_r eta)] for eta >= 1/n_r.
inline ExponentResult white_exponent(int n_t, int n_r, double eta) {
  if (n_t < 1 || n_r < 1) throw invalid_param("antenna counts must be >= 1");
  if (!(eta > 0.0)) throw invalid_param("energy per nat must be positive");
  const double floor_eta = 1.0 / n_r;
  if (eta < floor_eta) return {floor_eta, eta, 0.0, 0.0, ExponentStatus::below_eta_bar};
  const double scaled = n_r * eta;
  const double value = n_t * n_r * (1.0 / scaled - 1.0 + std::log(scaled));
  return {floor_eta, eta, std::max(0.0, value), n_t * (1.0 - scaled), ExponentStatus::ok};
}

/// Root of sum_i mu_i / (1 - l mu_i) = 1/eta over l <= 0.
inline double stationary_lambda(const CovariancePair& pair, double eta) {
  const auto mu = slope_eigenvalues(pair);
  double mean = 0.0;
  for (double m : mu) mean += m;
  if (!(mean > 0.0)) throw zero_mean("rate slope has zero mean");
  const double floor_eta = 1.0 / mean;
  if (std::abs(eta - floor_eta) <= 1e-12 * floor_eta) return 0.0;
  if (eta < floor_eta)
    throw below_eta_bar("eta " + std::to_string(eta) + " is below eta_bar " +
                        std::to_string(floor_eta));

  const double target = 1.0 / eta;
  const auto excess = [&](double l) {
    double s = 0.0;
    for (double m : mu) s += m / (1.0 - l * m);
    return target - s;
  };
  double hi = 0.0;
  double lo = -1.0;
  int doublings = 0;
  while (excess(lo) < 0.0) {
    if (++doublings > detail::kMaxDoublings)
      throw numeric_failure("stationary equation: bracketing failed");
    hi = lo;
    lo *= 2.0;
  }
  return detail::bisect_decreasing(excess, lo, hi);
}

// ---------------------------------------------------------------------------
// Two transmit antennas, one receive antenna, channel correlation delta and
// symmetric input Sigma(xi) = [[1, xi], [xi, 1]] / 2.

inline CovariancePair two_antenna_pair(double delta, double xi) {
  if (!(delta >= 0.0 && delta < 1.0)) throw invalid_param("delta must lie in [0, 1)");
  if (!(xi >= -1.0 && xi <= 1.0)) throw invalid_param("xi must lie in [-1, 1]");
  return CovariancePair::full(HermitianMatrix(CMatrix::two_by_two(delta)),
                              HermitianMatrix(CMatrix::two_by_two(xi, 0.5)), 2, 1);
}

inline ExponentResult two_antenna_exponent(double delta, double xi, double eta) {
  return correlated_exponent(two_antenna_pair(delta, xi), eta);
}

struct ShapingResult {
  double xi_star = 0.0;
  double exponent = 0.0;
};

/// Maximises the exponent over xi on the grid xi_i = (i - 1000)/1000,
/// i = 0..2000, then golden-section refines (to 1e-6) around the grid
/// argmax. Ties go to the lowest xi.
inline ShapingResult two_antenna_shaping(double delta, double eta) {
  if (!(delta >= 0.0 && delta < 1.0)) throw invalid_param("delta must lie in [0, 1)");
  constexpr int kHalf = 1000;
  const auto value = [&](double xi) { return two_antenna_exponent(delta, xi, eta).exponent; };

  int best = 0;
  double best_value = -kInf;
  for (int i = 0; i <= 2 * kHalf; ++i) {
    const double v = value(static_cast<double>(i - kHalf) / kHalf);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  ShapingResult result{static_cast<double>(best - kHalf) / kHalf, best_value};

  const double lo = static_cast<double>(std::max(best - 1, 0) - kHalf) / kHalf;
  const double hi = static_cast<double>(std::min(best + 1, 2 * kHalf) - kHalf) / kHalf;
  const auto refined = golden_maximize(value, lo, hi, 1e-6);
  if (refined.value > result.exponent) result = {refined.arg, refined.value};
  return result;
}

/// Large-eta behaviour of the two-antenna exponent (the o(1) term dropped).
inline double two_antenna_asymptote(double delta, double xi, double eta) {
  const double log_eta = std::log(eta);
  if (xi == -1.0) return log_eta + std::log1p(-delta) - 1.0;
  if (xi == 1.0) return log_eta + std::log1p(delta) - 1.0;
  return 2.0 * log_eta + std::log1p(-delta * delta) + std::log1p(-xi * xi) - 2.0;
}

}  // namespace wideband::mimo
