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

// Monte Carlo outage estimation over K parallel channels.
//
// Total power rho is split evenly (rho/K per channel) except under the
// feedback protocol. Outage is {R(K, rho) <= r} with r = rho / eta.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "wideband/errors.hpp"
#include "wideband/feedback.hpp"
#include "wideband/matrix.hpp"
#include "wideband/mimo.hpp"
#include "wideband/random.hpp"
#include "wideband/scalar_fading.hpp"

namespace wideband::mc {

enum class RateMode { exact, linear };

inline const char* to_string(RateMode m) { return m == RateMode::exact ? "exact" : "linear"; }

struct SimulationConfig {
  double rho = 1.0;
  double eta = 1.0;
  std::vector<int> K_list;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  RateMode rate_mode = RateMode::exact;
  unsigned workers = 1;

  double target_rate() const { return rho / eta; }

  void validate() const {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw invalid_config("rho must be positive and finite");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw invalid_config("eta must be positive and finite");
    if (K_list.empty()) throw invalid_config("K list is empty");
    for (int K : K_list)
      if (K < 1) throw invalid_config("every K must be >= 1");
    if (trials < 1) throw invalid_config("trials must be >= 1");
    if (workers < 1 || workers > 65535) throw invalid_config("workers must lie in [1, 65535]");
  }
};

using ChannelModel =
    std::variant<scalar::ScalarFadingModel, mimo::CovariancePair, feedback::FeedbackProtocol>;

struct OutageEstimate {
  int K = 0;
  std::int64_t trials = 0;
  std::int64_t outage_count = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

struct SlopeFit {
  double exponent_hat = 0.0;
  double intercept = 0.0;
  double stderr_ = 0.0;
  std::vector<int> K_used;
};

inline constexpr double kWilsonZ = 1.959963984540054;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval (95% by default).
inline Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z = kWilsonZ) {
  if (trials < 1 || successes < 0 || successes > trials)
    throw invalid_param("Wilson interval needs 0 <= successes <= trials, trials >= 1");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, std::min(centre - half, p)), std::min(1.0, std::max(centre + half, p))};
}

enum class Side { below, above };

/// Exp(1) conditioned on [0, tau] (below) or (tau, inf) (above).
inline double sample_truncated_exp(double tau, Side side, Rng& rng) {
  if (!(tau > 0.0)) throw invalid_param("tau must be positive");
  if (side == Side::above) return tau + sample_exponential(rng);
  const double p0 = -std::expm1(-tau);
  return std::min(tau, -std::log1p(-rng.uniform() * p0));
}

struct FeedbackDraw {
  double rate = 0.0;
  int k0 = 0;
};

/// One realisation of the feedback protocol's total rate. Reserved power
/// of an empty group is wasted.
inline FeedbackDraw feedback_rate(const feedback::FeedbackProtocol& proto, int K, double rho,
                                  Rng& rng) {
  int k0 = 0;
  for (int k = 0; k < K; ++k)
    if (rng.uniform() < proto.p0()) ++k0;
  const int k1 = K - k0;
  double rate = 0.0;
  if (k0 > 0) {
    const double gamma = proto.g0() * rho / k0;
    for (int i = 0; i < k0; ++i)
      rate += std::log1p(gamma * sample_truncated_exp(proto.tau(), Side::below, rng));
  }
  if (k1 > 0) {
    const double gamma = proto.g1() * rho / k1;
    for (int j = 0; j < k1; ++j)
      rate += std::log1p(gamma * sample_truncated_exp(proto.tau(), Side::above, rng));
  }
  return {rate, k0};
}

namespace detail {

// log det of a Hermitian positive-definite n x n matrix (row-major) by
// Cholesky.
inline double log_det_hpd(std::vector<cplx>& m, std::size_t n) {
  double log_det = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double d = m[j * n + j].real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(m[j * n + k]);
    if (!(d > 0.0)) throw numeric_failure("Cholesky: matrix is not positive definite");
    const double l = std::sqrt(d);
    m[j * n + j] = l;
    log_det += 2.0 * std::log(l);
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = m[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= m[i * n + k] * std::conj(m[j * n + k]);
      m[i * n + j] = s / l;
    }
  }
  return log_det;
}

// Draws one MIMO channel H (n_r x n_t, row-major) with vec(H^H) ~ CN(0, Psi)
// and returns the rate of one parallel channel at per-channel power gamma.
class MimoSampler {
 public:
  explicit MimoSampler(const mimo::CovariancePair& pair)
      : n_t_(static_cast<std::size_t>(pair.n_t())),
        n_r_(static_cast<std::size_t>(pair.n_r())),
        psi_root_(psd_sqrt(pair.psi(), "psi")),
        sigma_root_(psd_sqrt(pair.sigma(), "sigma")),
        v0_(n_t_ * n_r_),
        w_(n_r_ * n_t_),
        gram_(n_r_ * n_r_) {}

  double rate(double gamma, RateMode mode, Rng& rng) {
    const std::size_t n = n_t_ * n_r_;
    constexpr double kHalf = 0.7071067811865476;
    for (auto& z : v0_) z = cplx(sample_standard_normal(rng), sample_standard_normal(rng)) * kHalf;

    // W = H Sigma^1/2, H(r, j) = conj(V[r n_t + j]), V = Psi^1/2 V0.
    std::fill(w_.begin(), w_.end(), cplx{});
    for (std::size_t r = 0; r < n_r_; ++r)
      for (std::size_t j = 0; j < n_t_; ++j) {
        cplx v = 0.0;
        for (std::size_t k = 0; k < n; ++k) v += psi_root_(r * n_t_ + j, k) * v0_[k];
        const cplx h = std::conj(v);
        for (std::size_t c = 0; c < n_t_; ++c) w_[r * n_t_ + c] += h * sigma_root_(j, c);
      }

    if (mode == RateMode::linear) {
      double tr = 0.0;
      for (const auto& z : w_) tr += std::norm(z);
      return gamma * tr;
    }
    for (std::size_t a = 0; a < n_r_; ++a)
      for (std::size_t b = 0; b < n_r_; ++b) {
        cplx s = 0.0;
        for (std::size_t c = 0; c < n_t_; ++c) s += w_[a * n_t_ + c] * std::conj(w_[b * n_t_ + c]);
        gram_[a * n_r_ + b] = (a == b ? 1.0 : 0.0) + gamma * s;
      }
    return log_det_hpd(gram_, n_r_);
  }

 private:
  std::size_t n_t_;
  std::size_t n_r_;
  CMatrix psi_root_;
  CMatrix sigma_root_;
  std::vector<cplx> v0_;
  std::vector<cplx> w_;
  std::vector<cplx> gram_;
};

// Counts outages for one K over a contiguous block of trials.
inline std::int64_t count_outages(const ChannelModel& model, const SimulationConfig& cfg, int K,
                                  std::int64_t trials, Rng& rng) {
  const double r = cfg.target_rate();
  const double gamma = cfg.rho / K;
  std::int64_t count = 0;

  if (const auto* s = std::get_if<scalar::ScalarFadingModel>(&model)) {
    for (std::int64_t t = 0; t < trials; ++t) {
      double rate = 0.0;
      if (cfg.rate_mode == RateMode::linear) {
        for (int k = 0; k < K; ++k) rate += scalar::sample_squared_gain(*s, rng);
        rate *= gamma;
      } else {
        for (int k = 0; k < K; ++k) rate += std::log1p(gamma * scalar::sample_squared_gain(*s, rng));
      }
      if (rate <= r) ++count;
    }
  } else if (const auto* p = std::get_if<mimo::CovariancePair>(&model)) {
    MimoSampler sampler(*p);
    for (std::int64_t t = 0; t < trials; ++t) {
      double rate = 0.0;
      for (int k = 0; k < K; ++k) rate += sampler.rate(gamma, cfg.rate_mode, rng);
      if (rate <= r) ++count;
    }
  } else {
    const auto& proto = std::get<feedback::FeedbackProtocol>(model);
    for (std::int64_t t = 0; t < trials; ++t)
      if (feedback_rate(proto, K, cfg.rho, rng).rate <= r) ++count;
  }
  return count;
}

}  // namespace detail

/// Stream index of worker w for channel count K.
inline std::uint64_t stream_index(int K, unsigned worker) {
  return (static_cast<std::uint64_t>(K) << 16) | worker;
}

/// Outage estimates for every K in cfg.K_list. Trials are split into
/// cfg.workers contiguous blocks, each with its own stream (seed, K, worker),
/// so results depend only on (seed, workers).
inline std::vector<OutageEstimate> estimate_outage(const ChannelModel& model,
                                                   const SimulationConfig& cfg) {
  cfg.validate();
  if (std::holds_alternative<feedback::FeedbackProtocol>(model) &&
      cfg.rate_mode != RateMode::exact)
    throw invalid_config("the feedback protocol is simulated in exact rate mode only");

  std::vector<OutageEstimate> out;
  out.reserve(cfg.K_list.size());
  for (int K : cfg.K_list) {
    const unsigned workers = static_cast<unsigned>(
        std::min<std::int64_t>(cfg.workers, cfg.trials));
    std::vector<std::int64_t> counts(workers, 0);
    const auto block = [&](unsigned w) {
      const std::int64_t share = cfg.trials / workers + (w < cfg.trials % workers ? 1 : 0);
      Rng rng(cfg.seed, stream_index(K, w));
      counts[w] = detail::count_outages(model, cfg, K, share, rng);
    };
    if (workers == 1) {
      block(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(block, w);
    }

    OutageEstimate e;
    e.K = K;
    e.trials = cfg.trials;
    for (auto c : counts) e.outage_count += c;
    e.p_hat = static_cast<double>(e.outage_count) / static_cast<double>(e.trials);
    const auto ci = wilson_interval(e.outage_count, e.trials);
    e.ci_lo = ci.lo;
    e.ci_hi = ci.hi;
    out.push_back(e);
  }
  return out;
}

/// Least-squares line y = intercept + slope K with stderr of the slope.
inline SlopeFit fit_decay(const std::vector<int>& K, const std::vector<double>& neg_log_p) {
  if (K.size() != neg_log_p.size()) throw invalid_param("fit_decay: size mismatch");
  const std::size_t n = K.size();
  if (n < 3) throw insufficient_data("slope fit needs at least 3 points, got " + std::to_string(n));
  double mk = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mk += K[i];
    my += neg_log_p[i];
  }
  mk /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (K[i] - mk) * (K[i] - mk);
    sxy += (K[i] - mk) * (neg_log_p[i] - my);
  }
  if (!(sxx > 0.0)) throw insufficient_data("slope fit needs at least two distinct K values");
  SlopeFit fit;
  fit.exponent_hat = sxy / sxx;
  fit.intercept = my - fit.exponent_hat * mk;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = neg_log_p[i] - fit.intercept - fit.exponent_hat * K[i];
    ssr += e * e;
  }
  fit.stderr_ = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  fit.K_used = K;
  return fit;
}

inline constexpr std::int64_t kMinOutages = 20;

/// Slope of -log p_hat against K over estimates with at least 20 outages.
inline SlopeFit fit_slope(const std::vector<OutageEstimate>& estimates) {
  std::vector<int> K;
  std::vector<double> y;
  for (const auto& e : estimates) {
    if (e.outage_count < kMinOutages) continue;
    K.push_back(e.K);
    y.push_back(-std::log(e.p_hat));
  }
  if (K.size() < 3)
    throw insufficient_data("only " + std::to_string(K.size()) +
                            " K values have >= 20 outages; raise trials or lower K");
  return fit_decay(K, y);
}

}  // namespace wideband::mc
