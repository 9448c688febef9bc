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

// Prints outage exponents of scalar fading models over a range of energy
// per nat, one column per model.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "wideband/scalar_fading.hpp"

using wideband::scalar::ScalarFadingModel;

int main() {
  struct Column {
    std::string name;
    ScalarFadingModel model;
  };
  const std::vector<Column> cols{
      {"rayleigh", ScalarFadingModel::rayleigh()},
      {"rice(0.5)", ScalarFadingModel::rician(0.5)},
      {"rice(0.9)", ScalarFadingModel::rician(0.9)},
      {"naka(0.5)", ScalarFadingModel::nakagami(0.5)},
      {"naka(4)", ScalarFadingModel::nakagami(4.0)},
  };

  std::printf("%8s", "eta_dB");
  for (const auto& c : cols) std::printf(" %11s", c.name.c_str());
  std::printf("\n");

  for (double db = 0.0; db <= 20.0 + 1e-9; db += 2.0) {
    const double eta = std::pow(10.0, db / 10.0);
    std::printf("%8.1f", db);
    for (const auto& c : cols) std::printf(" %11.6f", wideband::scalar::closed_form_exponent(c.model, eta));
    std::printf("\n");
  }
  return 0;
}
