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

#include "wideband/errors.hpp"
#include "wideband/feedback.hpp"
#include "wideband/incomplete_gamma.hpp"
#include "wideband/ldp.hpp"
#include "wideband/matrix.hpp"
#include "wideband/mimo.hpp"
#include "wideband/montecarlo.hpp"
#include "wideband/random.hpp"
#include "wideband/scalar_fading.hpp"
#include "wideband/search.hpp"
