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

// Feedback protocol design: minimum energy per nat along the (g0, tau)
// tradeoff, then the best grid protocol at a few operating points.

#include <cmath>
#include <cstdio>
#include <vector>

#include "wideband/feedback.hpp"

using namespace wideband::feedback;

int main() {
  std::printf("eta_bar(g0, tau)\n%6s", "g0\\tau");
  const std::vector<double> taus{0.25, 0.5, 1.0, 2.0, 4.0};
  for (double t : taus) std::printf(" %9.2f", t);
  std::printf("\n");
  for (double g0 : {0.0, 0.25, 0.5, 0.75}) {
    std::printf("%6.2f", g0);
    for (double t : taus) std::printf(" %9.6f", feedback_eta_bar(FeedbackProtocol(t, g0)));
    std::printf("\n");
  }

  std::vector<double> g0s, grid;
  for (int i = 0; i <= 9; ++i) g0s.push_back(0.1 * i);
  for (int i = 1; i <= 50; ++i) grid.push_back(0.1 * i);

  std::printf("\nbest protocol on the grid\n%8s %6s %6s %12s %12s\n", "eta_dB", "g0", "tau", "exponent", "1/eta");
  for (double db : {-5.0, -2.5, 0.0, 2.5, 5.0}) {
    const double eta = std::pow(10.0, db / 10.0);
    const auto m = mesh(eta, g0s, grid, 4);
    const auto& best = m.entries[m.argmax];
    std::printf("%8.1f %6.2f %6.2f %12.6f %12.6f\n", db, best.g0, best.tau, best.exponent, 1.0 / eta);
  }
  return 0;
}
