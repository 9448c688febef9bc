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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "wideband/feedback.hpp"

using namespace wideband;
using namespace wideband::feedback;
using Catch::Approx;

namespace {

double e_tilde_0_objective(const FeedbackProtocol& p, double eta, double l) {
  return l / eta + std::log(1.0 - p.g0() * l) - std::log(1.0 - std::exp(-(1.0 - p.g0() * l) * p.tau()));
}

double e_tilde_objective(const FeedbackProtocol& p, double eta, double x, double l) {
  const double v = (1.0 - p.g0() * l / x) * p.tau();
  return l / eta - x * std::log(std::expm1(v)) + x * std::log(x - p.g0() * l) +
         (1.0 - x) * std::log(1.0 - x - (1.0 - p.g0()) * l) + (1.0 - l) * p.tau();
}

}  // namespace

TEST_CASE("Feedback - protocol construction") {
  const FeedbackProtocol p(1.0, 0.25);
  CHECK(p.p0() + p.p1() == 1.0);
  CHECK(p.p0() == Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(p.g1() == 0.75);
  const FeedbackProtocol tiny(1e-9, 0.5);
  CHECK(tiny.p0() + tiny.p1() == 1.0);
  CHECK(tiny.p0() == Approx(1e-9).epsilon(1e-8));
  CHECK_THROWS_AS(FeedbackProtocol(0.0, 0.5), invalid_param);
  CHECK_THROWS_AS(FeedbackProtocol(1.0, 1.1), invalid_param);
  CHECK_THROWS_AS(FeedbackProtocol(1.0, -0.1), invalid_param);
  CHECK_THROWS_AS(FeedbackProtocol(800.0, 0.5), invalid_param);
}

TEST_CASE("Feedback - eta_bar") {
  CHECK(feedback_eta_bar(FeedbackProtocol(1.0, 0.0)) == Approx(0.5).epsilon(1e-15));
  CHECK(feedback_eta_bar(FeedbackProtocol(1.0, 0.5)) == Approx(0.8271218915391636).epsilon(1e-14));
  CHECK(std::abs(feedback_eta_bar(FeedbackProtocol(1e-6, 0.5)) - 2.0) <= 1e-5);
  CHECK(feedback_eta_bar(FeedbackProtocol(2.0, 1.0)) == Approx(1.0 / (3.0 - 2.0 / (1.0 - std::exp(-2.0)))));
}

TEST_CASE("Feedback - eta_bar tradeoff") {
  for (double g0 : {0.0, 0.3, 0.6, 0.9}) {
    double prev = INFINITY;
    for (int i = 1; i <= 50; ++i) {
      const double v = feedback_eta_bar(FeedbackProtocol(0.1 * i, g0));
      CHECK(v < prev);
      prev = v;
    }
  }
  for (double tau : {0.2, 1.0, 3.0}) {
    double prev = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const double v = feedback_eta_bar(FeedbackProtocol(tau, 0.1 * i));
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("Feedback - on-off exponent") {
  CHECK(onoff_exponent(1.0, 0.5) == Approx(0.0).margin(1e-12));
  CHECK(onoff_exponent(1.0, 1.0) == Approx(1.0 - std::log(std::exp(1.0) - 1.0)).margin(1e-14));
  CHECK(onoff_exponent(1.0, 1.0) == Approx(0.4586751453870819).margin(1e-14));
  CHECK(std::abs(onoff_exponent(1.0, 1.0) - 0.45) <= 0.01);
  CHECK(onoff_exponent(2.0, 0.75) == Approx(0.14541345786885906).margin(1e-12));
  CHECK(onoff_exponent(1.0, 0.75) == Approx(0.13815425702129).margin(1e-12));
  CHECK(onoff_x_star(1.0, 0.75) == Approx(0.7257708929824294).margin(1e-12));
  CHECK(onoff_x_star(1.0, 0.5) == Approx(1.0 - std::exp(-1.0)).margin(1e-14));
  CHECK(onoff_x_star(1.0, 2.0) == 1.0);
  CHECK_THROWS_AS(onoff_exponent(1.0, 0.49), below_eta_bar);
  CHECK_THROWS_AS(onoff_exponent(0.0, 1.0), invalid_param);
}

TEST_CASE("Feedback - on-off continuity at eta = 1/tau") {
  for (double tau : {0.3, 1.0, 2.5}) {
    const double eta = 1.0 / tau;
    const double right = onoff_exponent(tau, eta);
    const double left = onoff_exponent(tau, eta * (1.0 - 1e-12));
    CHECK(std::abs(left - right) <= 1e-9);
    CHECK(right == Approx(tau - std::log(std::exp(tau) - 1.0)).margin(1e-12));
  }
}

TEST_CASE("Feedback - on-off x* is the numeric argmin over x") {
  for (double tau : {0.5, 1.0, 2.0}) {
    const FeedbackProtocol p(tau, 0.0);
    for (double f : {0.2, 0.5, 0.8}) {
      const double lo = 1.0 / (tau + 1.0), hi = 1.0 / tau;
      const double eta = lo + f * (hi - lo);
      const double xs = onoff_x_star(tau, eta);
      CHECK(xs > 0.0);
      CHECK(xs <= 1.0);
      const auto m = golden_minimize([&](double x) { return e_tilde(p, eta, x).value; }, 1e-6, 1.0 - 1e-6, 1e-10);
      CHECK(m.arg == Approx(xs).margin(1e-6));
      CHECK(e_tilde(p, eta, xs).value == Approx(onoff_exponent(tau, eta)).margin(1e-8));
    }
  }
  // at eta_bar the infimum is zero
  CHECK(e_tilde(FeedbackProtocol(1.0, 0.0), 0.5, (std::exp(1.0) - 1.0) / std::exp(1.0)).value ==
        Approx(0.0).margin(1e-9));
}

TEST_CASE("Feedback - on-off envelope") {
  const auto e1 = onoff_envelope(1.0);
  CHECK(e1.tau_star == 1.0);
  CHECK(e1.exponent == Approx(0.4586751453870819).margin(1e-14));
  CHECK(onoff_envelope(100.0).exponent == Approx(4.610166019324897).margin(1e-12));
  const auto q = onoff_envelope(0.25);
  CHECK(q.tau_star == 4.0);
  CHECK(q.exponent == Approx(0.018485446825886598).margin(1e-14));
  CHECK_THROWS_AS(onoff_envelope(0.0), invalid_param);

  for (int i = 0; i < 20; ++i) {
    const double eta = 0.2 * std::pow(50.0, i / 19.0);
    const double env = onoff_envelope(eta).exponent;
    for (int k = 1; k <= 100; ++k) {
      const double tau = 0.05 * k;
      if (eta < 1.0 / (tau + 1.0)) continue;
      CHECK(env >= onoff_exponent(tau, eta) - 1e-12);
    }
  }
}

TEST_CASE("Feedback - e_tilde_0 against value-only grids") {
  SECTION("g0 = 0 is flat in lambda") {
    const auto r = e_tilde_0(FeedbackProtocol(1.0, 0.0), 3.0);
    CHECK(r.argmax == 0.0);
    CHECK(r.value == Approx(0.4586751453870819).margin(1e-14));
  }
  for (auto [g0, eta] : std::vector<std::pair<double, double>>{{0.5, 10.0}, {1.0, 1.0}, {0.5, 0.9}, {0.3, 2.0}}) {
    const FeedbackProtocol p(1.0, g0);
    const auto r = e_tilde_0(p, eta);
    REQUIRE(r.status == ExponentStatus::ok);
    const auto g = oracle::grid_max([&](double l) { return e_tilde_0_objective(p, eta, l); }, -100.0, 0.0, 1e-3);
    CHECK(r.value == Approx(g.value).margin(1e-8));
  }
  CHECK(e_tilde_0(FeedbackProtocol(1.0, 0.5), 10.0).value == Approx(0.8168797340624838).margin(1e-10));
  CHECK(e_tilde_0(FeedbackProtocol(1.0, 0.5), 10.0).argmax == Approx(-7.602).margin(1e-3));
  CHECK(e_tilde_0(FeedbackProtocol(1.0, 1.0), 1.0).value == Approx(0.458675145).margin(1e-9));
}

TEST_CASE("Feedback - e_tilde against value-only grids") {
  const FeedbackProtocol p(1.0, 0.3);
  const auto r = e_tilde(p, 0.6, 0.5);
  const auto g = oracle::grid_max([&](double l) { return e_tilde_objective(p, 0.6, 0.5, l); }, -100.0, 0.0, 1e-4);
  CHECK(r.value == Approx(g.value).margin(1e-6));
  CHECK(r.value == Approx(0.0361904).margin(1e-6));

  for (double x : {0.05, 0.4, 0.95}) {
    const FeedbackProtocol q(2.0, 0.2);
    const auto a = e_tilde(q, 0.5, x);
    const auto b = oracle::grid_max([&](double l) { return e_tilde_objective(q, 0.5, x, l); }, -100.0, 0.0, 1e-3);
    CHECK(a.value == Approx(b.value).margin(1e-8));
  }
  // large |lambda| stays finite
  CHECK(std::isfinite(e_tilde(FeedbackProtocol(5.0, 0.9), 0.21, 0.01).value));
  CHECK_THROWS_AS(e_tilde(p, 0.6, 0.0), domain_error);
  CHECK_THROWS_AS(e_tilde(p, 0.6, 1.0), domain_error);
  // unbounded once 1/eta <= g1 tau
  CHECK(std::isinf(e_tilde(p, 1.0 / 0.7, 0.5).value));
}

TEST_CASE("Feedback - general exponent reduces to on-off at g0 = 0") {
  for (double tau : {0.5, 1.0, 2.0}) {
    const double lo = 1.0 / (tau + 1.0);
    for (int i = 0; i <= 12; ++i) {
      const double eta = lo * (1.0 + 0.05 * i * i);
      const auto r = general_exponent(FeedbackProtocol(tau, 0.0), eta);
      CHECK(std::abs(r.exponent - onoff_exponent(tau, eta)) <= 1e-6);
    }
  }
  CHECK(general_exponent(FeedbackProtocol(1.0, 0.0), 0.525).exponent == Approx(0.0017797809341074666).margin(1e-9));
  CHECK(general_exponent(FeedbackProtocol(2.0, 0.0), 5.0 / 12.0).exponent == Approx(0.03738675345227355).margin(1e-9));
}

TEST_CASE("Feedback - general exponent reference values") {
  const auto a = general_exponent(FeedbackProtocol(1.0, 0.5), 0.9);
  CHECK(a.exponent == Approx(0.007622852749544218).margin(1e-9));
  CHECK(a.exponent >= 0.0);
  CHECK(a.exponent <= e_tilde_0(FeedbackProtocol(1.0, 0.5), 0.9).value);
  CHECK(a.branch == Branch::tilde_x);
  CHECK(general_exponent(FeedbackProtocol(2.0, 0.3), 0.6).exponent == Approx(0.10925483361238855).margin(1e-9));
  // above 1/(g1 tau) only e_tilde_0 remains
  const auto b = general_exponent(FeedbackProtocol(1.0, 0.2), 1.5);
  CHECK(b.branch == Branch::tilde_0);
  CHECK(b.exponent == Approx(0.45867514538708).margin(1e-9));
  // g1 = 0: threshold is infinite, the min is always taken
  const auto c = general_exponent(FeedbackProtocol(1.0, 1.0), 3.0);
  CHECK(c.exponent == Approx(0.029641485468834494).margin(1e-9));
  CHECK(c.e_tilde_0 == Approx(0.5059805906227521).margin(1e-9));
  CHECK(c.branch == Branch::tilde_x);
  CHECK_THROWS_AS(general_exponent(FeedbackProtocol(1.0, 1.0), 1.0), below_eta_bar);
  CHECK_THROWS_AS(general_exponent(FeedbackProtocol(1.0, 0.5), 0.8), invalid_param);
}

TEST_CASE("Feedback - exponents vanish at eta_bar and never decrease") {
  for (double tau : {0.5, 1.0, 2.0})
    for (double g0 : {0.0, 0.3, 0.7}) {
      const FeedbackProtocol p(tau, g0);
      const double eb = feedback_eta_bar(p);
      CHECK(general_exponent(p, eb).exponent == Approx(0.0).margin(1e-9));
      double prev = 0.0, prev_onoff = 0.0;
      for (int i = 0; i < 50; ++i) {
        const double eta = eb * (1.0 + 9.0 * i / 49.0);
        const double e = general_exponent(p, eta).exponent;
        CHECK(e >= prev - 1e-9);
        prev = e;
        if (g0 == 0.0) {
          const double o = onoff_exponent(tau, eta);
          CHECK(o >= prev_onoff - 1e-12);
          prev_onoff = o;
        }
      }
    }
}

TEST_CASE("Feedback - mesh") {
  std::vector<double> g0s, taus;
  for (int i = 0; i <= 9; ++i) g0s.push_back(0.1 * i);
  for (int i = 1; i <= 50; ++i) taus.push_back(0.1 * i);
  const double expected_tau[] = {1.0 / std::sqrt(10.0) * 10.0, 1.0, 1.0 / std::sqrt(10.0)};
  const double etas[] = {1.0 / std::sqrt(10.0), 1.0, std::sqrt(10.0)};
  for (int k = 0; k < 3; ++k) {
    const auto m = mesh(etas[k], g0s, taus, 4);
    REQUIRE(m.entries.size() == g0s.size() * taus.size());
    const auto& best = m.entries[m.argmax];
    CHECK(best.g0 == 0.0);
    CHECK(std::abs(best.tau - expected_tau[k]) <= 0.1 + 1e-9);
  }
  // row-major layout, flagged entries, deterministic across worker counts
  const auto one = mesh(0.5, {0.0, 0.5}, {0.5, 1.0, 2.0}, 1);
  const auto many = mesh(0.5, {0.0, 0.5}, {0.5, 1.0, 2.0}, 3);
  REQUIRE(one.entries.size() == 6);
  CHECK(one.entries[1].g0 == 0.0);
  CHECK(one.entries[1].tau == 1.0);
  CHECK(one.entries[3].g0 == 0.5);
  CHECK(one.entries[3].status == ExponentStatus::below_eta_bar);
  CHECK(one.entries[3].exponent == 0.0);
  for (std::size_t i = 0; i < 6; ++i) CHECK(one.entries[i].exponent == many.entries[i].exponent);
  CHECK(one.argmax == many.argmax);
  CHECK_THROWS_AS(mesh(1.0, {1.0}, {1.0}), invalid_param);
  CHECK_THROWS_AS(mesh(1.0, {0.0}, {11.0}), invalid_param);
}
