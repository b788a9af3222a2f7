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

#include "semiq/specfun.hpp"

#include "semiq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace semiq {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

// glibc's lgamma writes the global signgam; the _r variant is re-entrant.
double log_gamma(double s)
{
    int sign = 0;
    return ::lgamma_r(s, &sign);
}

void require_finite(double x, const char* what)
{
    if (!std::isfinite(x)) throw DomainError(what);
}

// s ln x - x - ln Gamma(s), the common prefactor of P(s,x) and Q(s,x).
double gamma_log_prefactor(double s, double x)
{
    return s * std::log(x) - x - log_gamma(s);
}

// Series for P(s,x), valid and fast for x < s + 1.
double gamma_p_series(double s, double x)
{
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < 100000; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return std::exp(gamma_log_prefactor(s, x)) * sum;
}

// Modified Lentz continued fraction for Q(s,x), x >= s + 1.
double gamma_q_fraction(double s, double x)
{
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return std::exp(gamma_log_prefactor(s, x)) * h;
}

// e^x E1(x) for x > 1 by continued fraction.
double e1_scaled_fraction(double x)
{
    double b = x + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

// E1(x) for 0 < x <= 1 by the alternating power series.
double e1_series(double x)
{
    double sum = 0.0;
    double fact = 1.0;
    for (int k = 1; k < 200; ++k) {
        fact *= -x / k;
        const double term = -fact / k;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return -kEulerGamma - std::log(x) + sum;
}

struct MarcumParts {
    double q;
    double cdf;
};

// Quadrature of the defining integral; used only when the Poisson series
// would need more than max_terms terms.
MarcumParts marcum_by_quadrature(double alpha, double beta, const ToleranceConfig& tol)
{
    auto density = [alpha](double x) {
        const double shift = x - alpha;
        return x * std::exp(-0.5 * shift * shift) * bessel_i0_scaled(alpha * x);
    };
    if (beta >= alpha) {
        const auto r = integrate(density, beta, beta + 40.0, tol);
        const double q = std::clamp(r.value, 0.0, 1.0);
        return {q, 1.0 - q};
    }
    const auto r = integrate(density, std::max(0.0, alpha - 40.0), beta, tol);
    const double cdf = std::clamp(r.value, 0.0, 1.0);
    return {1.0 - cdf, cdf};
}

// Poisson mixture: with lambda = a^2/2 and x = b^2/2,
//   Q1 = sum_k Pois(k; lambda) Q(k+1, x),  1 - Q1 = sum_k Pois(k; lambda) P(k+1, x).
// Both sums run outward from the Poisson mode. Q(k+1, x) for integer
// order is the Poisson(x) CDF at k, so neighbours differ by one pmf term.
MarcumParts marcum_parts(double alpha, double beta, const ToleranceConfig& tol)
{
    require_finite(alpha, "marcum_q1: alpha must be finite");
    require_finite(beta, "marcum_q1: beta must be finite");
    detail::require(alpha >= 0.0, "marcum_q1: alpha must be >= 0");
    detail::require(beta >= 0.0, "marcum_q1: beta must be >= 0");

    if (beta == 0.0) return {1.0, 0.0};
    const double x = 0.5 * beta * beta;
    if (alpha == 0.0) return {std::exp(-x), -std::expm1(-x)};

    const double lambda = 0.5 * alpha * alpha;
    const double log_lambda = std::log(lambda);
    const double log_x = std::log(x);
    const double mode = std::floor(lambda);

    // Poisson(lambda) weight and Poisson(x) pmf term at the mode.
    const double p_mode = std::exp(-lambda + mode * log_lambda - log_gamma(mode + 1.0));
    const double d_mode = std::exp(-x + mode * log_x - log_gamma(mode + 1.0));
    const double q_mode = gamma_q(mode + 1.0, x);
    const double pg_mode = gamma_p(mode + 1.0, x);

    double q_sum = p_mode * q_mode;
    double cdf_sum = p_mode * pg_mode;
    int terms = 1;

    auto done = [&](double bound, double sum) {
        return bound <= std::max(tol.abs_tol * 1e-4, 1e-16 * sum) || bound < kTiny;
    };

    // Forward: k = mode + 1, mode + 2, ...
    {
        double p = p_mode;
        double d = d_mode;
        double qg = q_mode;
        double pg = pg_mode;
        double k = mode;
        bool q_done = false;
        bool c_done = false;
        while (!(q_done && c_done)) {
            k += 1.0;
            p *= lambda / k;
            d *= x / k;
            qg = std::min(1.0, qg + d);
            pg = std::max(0.0, pg - d);
            q_sum += p * qg;
            cdf_sum += p * pg;
            ++terms;
            // Remaining Poisson mass beyond k, geometric bound once k > lambda.
            const double ratio = lambda / (k + 1.0);
            const double tail = ratio < 1.0 ? p * ratio / (1.0 - ratio)
                                            : std::numeric_limits<double>::infinity();
            q_done = done(tail, q_sum);
            c_done = done(tail * pg, cdf_sum);
            if (terms > tol.max_terms) break;
        }
        if (!(q_done && c_done)) return marcum_by_quadrature(alpha, beta, tol);
    }

    // Backward: k = mode - 1, ..., 0.
    {
        double p = p_mode;
        double d = d_mode;
        double qg = q_mode;
        double pg = pg_mode;
        double k = mode;
        while (k > 0.0) {
            // Moving from order k+1 to k removes the pmf term at k.
            qg = std::max(0.0, qg - d);
            pg = std::min(1.0, pg + d);
            p *= k / lambda;
            d *= k / x;
            k -= 1.0;
            q_sum += p * qg;
            cdf_sum += p * pg;
            ++terms;
            const double ratio = k / lambda;
            const double head = ratio < 1.0 ? p * ratio / (1.0 - ratio)
                                            : std::numeric_limits<double>::infinity();
            if (done(head * qg, q_sum) && done(head, cdf_sum)) break;
            if (terms > tol.max_terms) return marcum_by_quadrature(alpha, beta, tol);
        }
    }

    return {std::clamp(q_sum, 0.0, 1.0), std::clamp(cdf_sum, 0.0, 1.0)};
}

} // namespace

void ToleranceConfig::validate() const
{
    detail::require(abs_tol > 0.0, "ToleranceConfig: abs_tol must be > 0");
    detail::require(rel_tol > 0.0, "ToleranceConfig: rel_tol must be > 0");
    detail::require(max_terms >= 50, "ToleranceConfig: max_terms must be >= 50");
    detail::require(max_subdivisions >= 20, "ToleranceConfig: max_subdivisions must be >= 20");
}

double bessel_i0_scaled(double x)
{
    require_finite(x, "bessel_i0_scaled: argument must be finite");
    const double ax = std::abs(x);
    if (ax <= 30.0) {
        const double q = 0.25 * ax * ax;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 500; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < sum * kEps) break;
        }
        return sum * std::exp(-ax);
    }
    // Asymptotic expansion; terms decrease well past double precision here.
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * ax);
        if (next >= term) break;
        term = next;
        sum += term;
        if (term < sum * kEps) break;
    }
    return sum / std::sqrt(2.0 * kPi * ax);
}

double bessel_j0(double x)
{
    require_finite(x, "bessel_j0: argument must be finite");
    const double ax = std::abs(x);
    if (ax <= 20.0) {
        // Alternating series; extended precision absorbs the cancellation.
        const long double q = 0.25L * ax * ax;
        long double term = 1.0L;
        long double sum = 1.0L;
        for (int k = 1; k < 200; ++k) {
            term *= -q / (static_cast<long double>(k) * k);
            sum += term;
            if (std::abs(term) < 1e-22L) break;
        }
        return static_cast<double>(sum);
    }
    // Hankel expansion J0 = sqrt(2/(pi x)) (P cos chi - Q sin chi).
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * ax);
        if (next >= term) break;
        term = next;
        // a_k(0) carries (-1)^k, so Q picks up an extra sign.
        const double signed_term = ((k / 2) % 2 == 0) ? term : -term;
        if (k % 2 == 0) p += signed_term; else q -= signed_term;
        if (term < kEps * 1e-2) break;
    }
    const double chi = ax - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * ax)) * (p * std::cos(chi) - q * std::sin(chi));
}

double marcum_q1(double alpha, double beta, const ToleranceConfig& tol)
{
    return marcum_parts(alpha, beta, tol).q;
}

double marcum_cdf(double alpha, double beta, const ToleranceConfig& tol)
{
    return marcum_parts(alpha, beta, tol).cdf;
}

double gamma_q(double s, double x)
{
    require_finite(s, "gamma_q: s must be finite");
    detail::require(s > 0.0, "gamma_q: s must be > 0");
    detail::require(x >= 0.0, "gamma_q: x must be >= 0");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < s + 1.0) return 1.0 - gamma_p_series(s, x);
    return gamma_q_fraction(s, x);
}

double gamma_p(double s, double x)
{
    require_finite(s, "gamma_p: s must be finite");
    detail::require(s > 0.0, "gamma_p: s must be > 0");
    detail::require(x >= 0.0, "gamma_p: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < s + 1.0) return gamma_p_series(s, x);
    return 1.0 - gamma_q_fraction(s, x);
}

double upper_incomplete_gamma(double s, double x)
{
    const double q = gamma_q(s, x);
    if (s <= 170.0) return std::tgamma(s) * q;
    return q > 0.0 ? std::exp(log_gamma(s) + std::log(q)) : 0.0;
}

double exp_integral_e1(double x)
{
    require_finite(x, "exp_integral_e1: argument must be finite");
    detail::require(x > 0.0, "exp_integral_e1: x must be > 0");
    if (x <= 1.0) return e1_series(x);
    return std::exp(-x) * e1_scaled_fraction(x);
}

double exp_integral_e1_scaled(double x)
{
    require_finite(x, "exp_integral_e1_scaled: argument must be finite");
    detail::require(x > 0.0, "exp_integral_e1_scaled: x must be > 0");
    if (x <= 1.0) return std::exp(x) * e1_series(x);
    return e1_scaled_fraction(x);
}

double lambert_w0(double y)
{
    require_finite(y, "lambert_w0: argument must be finite");
    constexpr double kInvE = 0.36787944117144232159552377016146087;
    if (y < -kInvE) {
        // Allow one ulp of slack so that -1/e computed by callers is accepted.
        if (y < -kInvE * (1.0 + 4.0 * kEps)) throw DomainError("lambert_w0: y must be >= -1/e");
        return -1.0;
    }
    if (y == 0.0) return 0.0;

    double w;
    if (y < -0.25) {
        // Branch-point expansion in p = sqrt(2(e y + 1)).
        const double p = std::sqrt(std::max(0.0, 2.0 * (std::exp(1.0) * y + 1.0)));
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    } else if (y < 3.0) {
        w = std::log1p(y);
        if (y > 0.0) w *= 0.7;
    } else {
        const double l1 = std::log(y);
        const double l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }

    for (int i = 0; i < 100; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - y;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0) break;
        // Halley step.
        const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        const double step = f / denom;
        w -= step;
        if (std::abs(step) <= 4.0 * kEps * (1.0 + std::abs(w))) break;
    }
    return w;
}

} // namespace semiq
