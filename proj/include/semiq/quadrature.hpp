// SPDX-License-Identifier: Apache-2.0
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

#include "semiq/specfun.hpp"

#include <functional>
#include <vector>

namespace semiq {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;       // estimated absolute error
    int subdivisions = 0;
    double tail_bound = 0.0;  // truncation bound when an infinite range was cut
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
///
/// Intervals are bisected largest-error first until the summed error
/// estimate drops below max(abs_tol, rel_tol * |value|). Optional
/// breakpoints split the range up front (kinks, clamp boundaries).
/// Throws AccuracyError when max_subdivisions is reached first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const ToleranceConfig& tol = {},
                           const std::vector<double>& breakpoints = {});

} // namespace semiq
