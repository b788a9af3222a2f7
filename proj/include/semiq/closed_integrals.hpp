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

#include "semiq/quadrature.hpp"
#include "semiq/semilinear.hpp"
#include "semiq/specfun.hpp"

#include <limits>

namespace semiq {

/// G(alpha, rho) = int_rho^inf e^{-n x} x^m (1 - Q1(alpha, x)) dx.
struct GIntegralParams {
    double alpha = 0.0;
    double rho = 0.0;
    double m = 0.0;
    double n = 1.0;

    void validate() const;
};

/// T(alpha, m, a, theta1, theta2) = int_theta1^theta2 e^{-m x} log(1 + a x) Q1(alpha, x) dx.
/// theta2 may be +inf only when m > 0.
struct TIntegralParams {
    double alpha = 0.0;
    double m = 1.0;
    double a = 1.0;
    double theta1 = 0.0;
    double theta2 = std::numeric_limits<double>::infinity();

    void validate() const;
};

/// Coefficients of the complementary line Q1 ~ n2 x + n1 on [c1, c2].
struct LineCoeffs {
    double n1 = 0.0;
    double n2 = 0.0;
};

LineCoeffs line_coeffs(const SemiLinearFit& fit);

/// Quadrature oracle for G. The range is cut where the tail bound
/// Gamma(m+1, n X) / n^(m+1) is negligible; the bound is reported in
/// tail_bound.
QuadratureResult g_exact_detailed(const GIntegralParams& p, const ToleranceConfig& tol = {});
double g_exact(const GIntegralParams& p, const ToleranceConfig& tol = {});

/// Closed form for G built on the asymptotic corollary-1 line.
double g_approx(const GIntegralParams& p);

/// Quadrature oracle for T. For theta2 = inf the range is cut at X with
/// Q1(alpha, X) * int_X^inf e^{-m x} log(1 + a x) dx below the tolerance.
QuadratureResult t_exact_detailed(const TIntegralParams& p, const ToleranceConfig& tol = {});
double t_exact(const TIntegralParams& p, const ToleranceConfig& tol = {});

/// Closed form for T with m > 0. m == 0 throws DispatchError (use t0_approx).
double t_approx(const TIntegralParams& p, const SemiLinearFit& fit);
double t_approx(const TIntegralParams& p);

/// Closed form for T with m == 0 and finite theta2.
double t0_approx(const TIntegralParams& p, const SemiLinearFit& fit);
double t0_approx(const TIntegralParams& p);

namespace antiderivative {

/// d/dx F1 = e^{-m x} log(1 + a x)
double f1(double x, double m, double a);
/// d/dx F2 = (n2 x + n1) e^{-m x} log(1 + a x)
double f2(double x, double m, double a, const LineCoeffs& c);
/// d/dx F3 = log(1 + a x)
double f3(double x, double a);
/// d/dx F4 = (n2 x + n1) log(1 + a x)
double f4(double x, double a, const LineCoeffs& c);

} // namespace antiderivative

} // namespace semiq
