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

#include "semiq/closed_integrals.hpp"

#include <algorithm>
#include <cmath>

namespace semiq {

namespace {

bool nonneg_finite(double x) { return std::isfinite(x) && x >= 0.0; }

void require_fit_matches(const SemiLinearFit& fit, double alpha)
{
    if (std::abs(fit.alpha - alpha) > 1e-12 * std::max(1.0, alpha)) {
        throw DomainError("fit was built for a different alpha");
    }
}

// Piecewise sum over the two segments where the approximate Q1 is nonzero:
// weight 1 on [theta1, c1) and the line on [c1, c2].
template <class Full, class Linear>
double piecewise(const TIntegralParams& p, const SemiLinearFit& fit, Full full, Linear linear)
{
    double total = 0.0;
    const double lo_full = p.theta1;
    const double hi_full = std::min(fit.c1, p.theta2);
    if (lo_full < hi_full) total += full(hi_full) - full(lo_full);
    const double lo_lin = std::max(fit.c1, p.theta1);
    const double hi_lin = std::min(fit.c2, p.theta2);
    if (lo_lin < hi_lin) total += linear(hi_lin) - linear(lo_lin);
    return total;
}

} // namespace

void GIntegralParams::validate() const
{
    detail::require(nonneg_finite(alpha), "alpha must be finite and >= 0");
    detail::require(nonneg_finite(rho), "rho must be finite and >= 0");
    detail::require(nonneg_finite(m), "m must be finite and >= 0");
    detail::require(std::isfinite(n) && n > 0.0, "n must be finite and > 0");
}

void TIntegralParams::validate() const
{
    detail::require(nonneg_finite(alpha), "alpha must be finite and >= 0");
    detail::require(nonneg_finite(m), "m must be finite and >= 0");
    detail::require(std::isfinite(a) && a > 0.0, "a must be finite and > 0");
    detail::require(nonneg_finite(theta1), "theta1 must be finite and >= 0");
    detail::require(!std::isnan(theta2) && theta2 > theta1, "theta2 must be > theta1");
    detail::require(std::isfinite(theta2) || m > 0.0, "theta2 = inf requires m > 0");
}

LineCoeffs line_coeffs(const SemiLinearFit& fit)
{
    return {1.0 + fit.slope * fit.beta0 - fit.y0, -fit.slope};
}

QuadratureResult g_exact_detailed(const GIntegralParams& p, const ToleranceConfig& tol)
{
    p.validate();
    tol.validate();
    const double s = p.m + 1.0;
    auto tail = [&](double x) { return upper_incomplete_gamma(s, p.n * x) / std::pow(p.n, s); };

    const double target = 1e-3 * tol.abs_tol;
    double upper = std::max(p.rho, p.alpha) + 1.0;
    while (tail(upper) > target) upper += std::max(1.0, 0.25 * upper);

    auto f = [&](double x) {
        if (x <= 0.0) return 0.0;
        return std::exp(-p.n * x + p.m * std::log(x)) * marcum_cdf(p.alpha, x, tol);
    };
    auto r = integrate(f, p.rho, upper, tol, {p.alpha, p.m / p.n});
    r.tail_bound = tail(upper);
    return r;
}

double g_exact(const GIntegralParams& p, const ToleranceConfig& tol)
{
    return g_exact_detailed(p, tol).value;
}

double g_approx(const GIntegralParams& p)
{
    p.validate();
    const SemiLinearFit fit = fit_corollary1(p.alpha, true);
    const double s = p.m + 1.0;
    const double n = p.n;
    const double scale1 = std::pow(n, -s);
    const double scale2 = std::pow(n, -s - 1.0);
    if (p.rho >= fit.c2) return upper_incomplete_gamma(s, n * p.rho) * scale1;

    const double lo = std::max(fit.c1, p.rho);
    const double head = upper_incomplete_gamma(s, n * fit.c2) * scale1;
    const double intercept = -p.alpha / kSqrt2Pi + fit.y0;
    const double flat = intercept * scale1 *
                        (upper_incomplete_gamma(s, n * lo) - upper_incomplete_gamma(s, n * fit.c2));
    const double ramp = (upper_incomplete_gamma(s + 1.0, n * lo) - upper_incomplete_gamma(s + 1.0, n * fit.c2)) *
                        scale2 / kSqrt2Pi;
    return head + flat + ramp;
}

QuadratureResult t_exact_detailed(const TIntegralParams& p, const ToleranceConfig& tol)
{
    p.validate();
    tol.validate();
    auto f = [&](double x) { return std::exp(-p.m * x) * std::log1p(p.a * x) * marcum_q1(p.alpha, x, tol); };

    double upper = p.theta2;
    double tail = 0.0;
    if (!std::isfinite(upper)) {
        auto bound = [&](double x) { return marcum_q1(p.alpha, x, tol) * -antiderivative::f1(x, p.m, p.a); };
        const double target = 1e-3 * tol.abs_tol;
        upper = std::max(p.theta1, p.alpha) + 1.0;
        while (bound(upper) > target) upper += std::max(1.0, 0.25 * upper);
        tail = bound(upper);
    }
    auto r = integrate(f, p.theta1, upper, tol, {p.alpha});
    r.tail_bound = tail;
    return r;
}

double t_exact(const TIntegralParams& p, const ToleranceConfig& tol)
{
    return t_exact_detailed(p, tol).value;
}

double t_approx(const TIntegralParams& p, const SemiLinearFit& fit)
{
    p.validate();
    if (p.m == 0.0) throw DispatchError("m = 0 is handled by t0_approx");
    require_fit_matches(fit, p.alpha);
    const LineCoeffs c = line_coeffs(fit);
    return piecewise(
        p, fit, [&](double x) { return antiderivative::f1(x, p.m, p.a); },
        [&](double x) { return antiderivative::f2(x, p.m, p.a, c); });
}

double t_approx(const TIntegralParams& p)
{
    p.validate();
    return t_approx(p, fit_lemma1(p.alpha));
}

double t0_approx(const TIntegralParams& p, const SemiLinearFit& fit)
{
    p.validate();
    if (p.m != 0.0) throw DispatchError("m > 0 is handled by t_approx");
    if (!std::isfinite(p.theta2)) throw DomainError("theta2 must be finite when m = 0");
    require_fit_matches(fit, p.alpha);
    const LineCoeffs c = line_coeffs(fit);
    return piecewise(
        p, fit, [&](double x) { return antiderivative::f3(x, p.a); },
        [&](double x) { return antiderivative::f4(x, p.a, c); });
}

double t0_approx(const TIntegralParams& p)
{
    p.validate();
    return t0_approx(p, fit_lemma1(p.alpha));
}

namespace antiderivative {

double f1(double x, double m, double a)
{
    // e^{m/a} E1(m x + m/a) rewritten as e^{-m x} times the scaled E1.
    const double u = m * x + m / a;
    return -std::exp(-m * x) / m * (exp_integral_e1_scaled(u) + std::log1p(a * x));
}

double f2(double x, double m, double a, const LineCoeffs& c)
{
    const double u = m * x + m / a;
    const double log_term = std::log1p(a * x);
    const double e1_coef = m * c.n2 - a * c.n2 - a * m * c.n1;
    const double bracket = e1_coef * exp_integral_e1_scaled(u) -
                           a * (m * c.n2 * x + c.n2 + m * c.n1) * log_term - a * c.n2;
    return std::exp(-m * x) * bracket / (a * m * m);
}

double f3(double x, double a)
{
    const double ax1 = a * x + 1.0;
    return ax1 * (std::log1p(a * x) - 1.0) / a;
}

double f4(double x, double a, const LineCoeffs& c)
{
    const double ax = a * x;
    const double quad = c.n2 * ((2.0 * ax * ax - 2.0) * std::log1p(ax) - ax * ax + 2.0 * ax) / (4.0 * a * a);
    return quad + c.n1 * f3(x, a);
}

} // namespace antiderivative

} // namespace semiq
