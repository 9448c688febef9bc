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

// One-bit feedback over Rayleigh parallel channels.
//
// Each channel reports whether |H|^2 > tau. The K0 "weak" channels share
// power g0 rho, the K1 = K - K0 "strong" ones share g1 rho = (1 - g0) rho.
// g0 = 0 is on-off allocation (weak channels are switched off).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "wideband/errors.hpp"
#include "wideband/ldp.hpp"
#include "wideband/search.hpp"

namespace wideband::feedback {

class FeedbackProtocol {
 public:
  FeedbackProtocol(double tau, double g0) : tau_(tau), g0_(g0) {
    if (!(tau > 0.0) || !std::isfinite(tau))
      throw invalid_param("threshold tau must be positive and finite, got " + std::to_string(tau));
    if (!(g0 >= 0.0 && g0 <= 1.0))
      throw invalid_param("power fraction g0 must lie in [0, 1], got " + std::to_string(g0));
    // The smaller probability is computed directly, the larger as its
    // complement, so p0 + p1 == 1 holds exactly.
    if (tau < std::log(2.0)) {
      p0_ = -std::expm1(-tau);
      p1_ = 1.0 - p0_;
    } else {
      p1_ = std::exp(-tau);
      p0_ = 1.0 - p1_;
    }
    if (!(p0_ > 0.0 && p0_ < 1.0))
      throw invalid_param("threshold tau " + std::to_string(tau) + " gives a degenerate split");
  }

  double tau() const { return tau_; }
  double g0() const { return g0_; }
  double g1() const { return 1.0 - g0_; }
  double p0() const { return p0_; }
  double p1() const { return p1_; }

 private:
  double tau_;
  double g0_;
  double p0_ = 0.0;
  double p1_ = 0.0;
};

/// [tau + 1 - g0 tau / p0]^-1.
inline double feedback_eta_bar(const FeedbackProtocol& proto) {
  return 1.0 / (proto.tau() + 1.0 - proto.g0() * proto.tau() / proto.p0());
}

namespace detail {

/// Binary entropy in nats, 0 log 0 = 0.
inline double binary_entropy(double x) {
  double h = 0.0;
  if (x > 0.0) h -= x * std::log(x);
  if (x < 1.0) h -= (1.0 - x) * std::log1p(-x);
  return h;
}

/// -log(1 - e^-t) = t - log(e^t - 1).
inline double neg_log_p0(double tau) { return -std::log(-std::expm1(-tau)); }

inline void check_onoff(double tau, double eta) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw invalid_param("tau must be positive and finite");
  if (!(eta > 0.0)) throw invalid_param("energy per nat must be positive");
  if (eta < 1.0 / (tau + 1.0))
    throw below_eta_bar("eta " + std::to_string(eta) + " is below 1/(tau+1) = " +
                        std::to_string(1.0 / (tau + 1.0)));
}

}  // namespace detail

/// Fraction of weak channels on the dominant outage path of on-off
/// allocation; 1 once eta >= 1/tau.
inline double onoff_x_star(double tau, double eta) {
  detail::check_onoff(tau, eta);
  const double a = 1.0 / eta - tau;
  if (a <= 0.0) return 1.0;
  const double q = a * std::exp(1.0 - a) / std::expm1(tau);
  return 1.0 / (1.0 + q);
}

/// On-off (g0 = 0) exponent.
inline double onoff_exponent(double tau, double eta) {
  detail::check_onoff(tau, eta);
  const double a = 1.0 / eta - tau;
  if (a <= 0.0) return detail::neg_log_p0(tau);
  const double x = onoff_x_star(tau, eta);
  // log(e^tau - 1) = tau + log(p0)
  const double log_em1 = tau + std::log(-std::expm1(-tau));
  const double value =
      tau + (1.0 - x) * (a - 1.0 - std::log(a)) - x * log_em1 - detail::binary_entropy(x);
  return std::max(0.0, value);
}

struct Envelope {
  double tau_star = 0.0;
  double exponent = 0.0;
};

/// Upper envelope of the on-off curves over tau, attained at tau = 1/eta.
inline Envelope onoff_envelope(double eta) {
  if (!(eta > 0.0)) throw invalid_param("energy per nat must be positive");
  const double tau = 1.0 / eta;
  return {tau, detail::neg_log_p0(tau)};
}

/// sup_{l <= 0} { l/eta + log(1 - g0 l) - log(1 - e^{-(1 - g0 l) tau}) }.
inline ConcaveSup e_tilde_0(const FeedbackProtocol& proto, double eta) {
  if (!(eta > 0.0)) throw invalid_param("energy per nat must be positive");
  const double g0 = proto.g0();
  const double tau = proto.tau();
  const double target = 1.0 / eta;
  const auto objective = [=](double l) {
    const double u = (1.0 - g0 * l) * tau;
    return l * target + std::log1p(-g0 * l) - std::log(-std::expm1(-u));
  };
  const auto slope = [=](double l) {
    const double u = (1.0 - g0 * l) * tau;
    return target - g0 / (1.0 - g0 * l) + g0 * tau / std::expm1(u);
  };
  auto sup = sup_nonpositive(objective, slope);
  if (sup.status == ExponentStatus::ok) sup.value = std::max(0.0, sup.value);
  return sup;
}

/// Inner exponent for a weak-channel fraction x in (0, 1):
/// sup_{l <= 0} { l/eta - x log(e^v - 1) + x log(x - g0 l)
///                + (1 - x) log(1 - x - g1 l) + (1 - l) tau },  v = (1 - g0 l / x) tau.
/// The objective grows without bound when 1/eta <= g1 tau; the value is
/// then +inf.
inline ConcaveSup e_tilde(const FeedbackProtocol& proto, double eta, double x) {
  if (!(eta > 0.0)) throw invalid_param("energy per nat must be positive");
  if (!(x > 0.0 && x < 1.0)) throw domain_error("x must lie in (0, 1), got " + std::to_string(x));
  const double g0 = proto.g0();
  const double g1 = proto.g1();
  const double tau = proto.tau();
  const double target = 1.0 / eta;
  if (target <= g1 * tau) return {-kInf, kInf, ExponentStatus::ok};

  const auto objective = [=](double l) {
    const double v = (1.0 - g0 * l / x) * tau;
    return l * target - x * (v + std::log(-std::expm1(-v))) + x * std::log(x - g0 * l) +
           (1.0 - x) * std::log(1.0 - x - g1 * l) + (1.0 - l) * tau;
  };
  const auto slope = [=](double l) {
    const double v = (1.0 - g0 * l / x) * tau;
    return target + g0 * tau / std::expm1(v) - x * g0 / (x - g0 * l) -
           (1.0 - x) * g1 / (1.0 - x - g1 * l) - g1 * tau;
  };
  return sup_nonpositive(objective, slope);
}

enum class Branch { tilde_0, tilde_x };

struct GeneralResult {
  double exponent = 0.0;
  Branch branch = Branch::tilde_0;
  double x_star = std::numeric_limits<double>::quiet_NaN();  // set for the tilde_x branch
  double e_tilde_0 = 0.0;
};

/// Exponent of a general (g0, tau) protocol.
///
/// For eta <= 1/(g1 tau) (+inf when g1 = 0) this is
/// min{ inf_x e_tilde(x), e_tilde_0 }, otherwise e_tilde_0. The x-infimum
/// scans 256 points of [1e-6, 1 - 1e-6] and golden-refines (to 1e-8)
/// around the three best.
inline GeneralResult general_exponent(const FeedbackProtocol& proto, double eta) {
  if (!(eta > 0.0)) throw invalid_param("energy per nat must be positive");
  const double floor_eta = feedback_eta_bar(proto);
  if (eta < floor_eta * (1.0 - 1e-12))
    throw below_eta_bar("eta " + std::to_string(eta) + " is below eta_bar " +
                        std::to_string(floor_eta));

  const auto base = e_tilde_0(proto, eta);
  if (base.status != ExponentStatus::ok) throw numeric_failure("e_tilde_0 did not converge");
  GeneralResult out{base.value, Branch::tilde_0, std::numeric_limits<double>::quiet_NaN(),
                    base.value};

  const double g1_tau = proto.g1() * proto.tau();
  const double threshold = g1_tau > 0.0 ? 1.0 / g1_tau : kInf;
  if (eta > threshold) return out;

  const auto inner = [&](double x) {
    const auto r = e_tilde(proto, eta, x);
    if (r.status != ExponentStatus::ok) throw numeric_failure("e_tilde did not converge");
    return r.value;
  };

  constexpr int kGrid = 256;
  constexpr double kLo = 1e-6;
  constexpr double kHi = 1.0 - 1e-6;
  const double step = (kHi - kLo) / (kGrid - 1);
  std::vector<double> values(kGrid);
  for (int i = 0; i < kGrid; ++i) values[i] = inner(kLo + i * step);

  std::vector<int> order(kGrid);
  for (int i = 0; i < kGrid; ++i) order[i] = i;
  std::partial_sort(order.begin(), order.begin() + 3, order.end(),
                    [&](int a, int b) { return values[a] < values[b] || (values[a] == values[b] && a < b); });

  double best_x = kLo + order[0] * step;
  double best = values[order[0]];
  for (int k = 0; k < 3; ++k) {
    const int i = order[k];
    const double a = kLo + std::max(i - 1, 0) * step;
    const double b = kLo + std::min(i + 1, kGrid - 1) * step;
    const auto r = golden_minimize(inner, a, b, 1e-8);
    if (r.value < best) {
      best = r.value;
      best_x = r.arg;
    }
  }

  if (best < out.exponent) {
    out.exponent = std::max(0.0, best);
    out.branch = Branch::tilde_x;
    out.x_star = best_x;
  }
  return out;
}

struct MeshEntry {
  double g0 = 0.0;
  double tau = 0.0;
  double eta = 0.0;
  double exponent = 0.0;
  ExponentStatus status = ExponentStatus::ok;
};

struct MeshResult {
  std::vector<MeshEntry> entries;  // row-major: g0 outer, tau inner
  std::size_t argmax = 0;
};

/// general_exponent over a (g0, tau) grid. Points with eta below the
/// protocol's eta_bar get exponent 0 and status below_eta_bar. The argmax
/// is the first maximal entry in row-major order.
inline MeshResult mesh(double eta, const std::vector<double>& g0_grid,
                       const std::vector<double>& tau_grid, unsigned workers = 1) {
  if (!(eta > 0.0)) throw invalid_param("energy per nat must be positive");
  if (g0_grid.empty() || tau_grid.empty()) throw invalid_param("mesh grids must be non-empty");
  for (double g0 : g0_grid)
    if (!(g0 >= 0.0 && g0 < 1.0)) throw invalid_param("mesh g0 values must lie in [0, 1)");
  for (double tau : tau_grid)
    if (!(tau > 0.0 && tau <= 10.0)) throw invalid_param("mesh tau values must lie in (0, 10]");

  MeshResult result;
  result.entries.resize(g0_grid.size() * tau_grid.size());
  const auto fill = [&](std::size_t idx) {
    MeshEntry& e = result.entries[idx];
    e.g0 = g0_grid[idx / tau_grid.size()];
    e.tau = tau_grid[idx % tau_grid.size()];
    e.eta = eta;
    const FeedbackProtocol proto(e.tau, e.g0);
    if (eta < feedback_eta_bar(proto)) {
      e.status = ExponentStatus::below_eta_bar;
      return;
    }
    try {
      e.exponent = general_exponent(proto, eta).exponent;
    } catch (const numeric_failure&) {
      e.status = ExponentStatus::no_convergence;
    }
  };

  const std::size_t n = result.entries.size();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fill(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += workers) fill(i);
      });
  }

  for (std::size_t i = 1; i < n; ++i)
    if (result.entries[i].exponent > result.entries[result.argmax].exponent) result.argmax = i;
  return result;
}

}  // namespace wideband::feedback
