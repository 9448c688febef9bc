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

#include <stdexcept>
#include <string>

namespace wideband {

// Bad model / protocol / config parameter supplied by the caller.
class invalid_param : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The rate slope has non-positive mean, so no finite energy per nat exists.
class zero_mean : public invalid_param {
 public:
  using invalid_param::invalid_param;
};

// Requested energy per nat lies below the wideband minimum.
class below_eta_bar : public invalid_param {
 public:
  using invalid_param::invalid_param;
};

class not_hermitian : public invalid_param {
 public:
  using invalid_param::invalid_param;
};

// A matrix or protocol invariant (PSD, unit trace, ...) does not hold.
class invariant_violation : public invalid_param {
 public:
  using invalid_param::invalid_param;
};

class domain_error : public invalid_param {
 public:
  using invalid_param::invalid_param;
};

class invalid_config : public invalid_param {
 public:
  using invalid_param::invalid_param;
};

// Numerical procedure did not converge (bracketing cap, Jacobi sweep cap).
class numeric_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Too few usable Monte Carlo points for a slope fit.
class insufficient_data : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wideband
