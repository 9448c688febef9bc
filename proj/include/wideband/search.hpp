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
#include <utility>

namespace wideband {

struct ScalarOptimum {
  double arg = 0.0;
  double value = 0.0;
};

/// Golden-section search for a minimum of f on [a, b], stopping once the
/// bracket is narrower than tol.
template <class F>
ScalarOptimum golden_minimize(F&& f, double a, double b, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? ScalarOptimum{c, fc} : ScalarOptimum{d, fd};
}

template <class F>
ScalarOptimum golden_maximize(F&& f, double a, double b, double tol) {
  auto r = golden_minimize([&](double x) { return -f(x); }, a, b, tol);
  return {r.arg, -r.value};
}

}  // namespace wideband
