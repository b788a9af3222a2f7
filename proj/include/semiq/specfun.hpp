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

#include "semiq/errors.hpp"

namespace semiq {

/// Accuracy targets shared by the series evaluations and the adaptive
/// quadrature oracles.
struct ToleranceConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_terms = 5000;         // series cap, >= 50
    int max_subdivisions = 2000;  // quadrature cap, >= 20

    /// Throws DomainError when any field violates its invariant.
    void validate() const;
};

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kSqrt2Pi = 2.50662827463100050241576528481104525;

/// e^{-|x|} I0(x). The unscaled value is e^{|x|} times the result.
double bessel_i0_scaled(double x);

/// Bessel function of the first kind, order zero.
double bessel_j0(double x);

/// First-order Marcum Q-function
///
///   Q1(a, b) = int_b^inf x exp(-(x^2 + a^2)/2) I0(a x) dx
///
/// evaluated as a Poisson mixture of regularized upper gamma functions.
/// The absolute error is bounded by tol.abs_tol. Falls back to
/// quadrature of the defining integral if the series needs more than
/// tol.max_terms terms (very large a).
double marcum_q1(double alpha, double beta, const ToleranceConfig& tol = {});

/// 1 - Q1(alpha, beta), summed directly so small CDF values keep their
/// relative accuracy.
double marcum_cdf(double alpha, double beta, const ToleranceConfig& tol = {});

/// Regularized upper incomplete gamma Q(s, x) = Gamma(s, x) / Gamma(s).
double gamma_q(double s, double x);

/// Regularized lower incomplete gamma P(s, x) = 1 - Q(s, x).
double gamma_p(double s, double x);

/// Upper incomplete gamma Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt.
double upper_incomplete_gamma(double s, double x);

/// Exponential integral E1(x) = int_x^inf e^{-t}/t dt, x > 0.
double exp_integral_e1(double x);

/// e^x E1(x); stays finite where E1 underflows.
double exp_integral_e1_scaled(double x);

/// Principal branch W0 of the Lambert W function, y >= -1/e.
double lambert_w0(double y);

} // namespace semiq
