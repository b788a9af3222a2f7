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

#include "semiq/rate_adapt.hpp"

#include "semiq/pa_model.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace semiq {

namespace {

void require_inputs(double g_hat, double sigma, double power)
{
    if (!std::isfinite(g_hat) || g_hat < 0.0) throw DomainError("g_hat must be finite and >= 0");
    if (!std::isfinite(sigma) || std::abs(sigma) > 1.0) throw DomainError("sigma must lie in [-1, 1]");
    if (!std::isfinite(power) || power <= 0.0) throw DomainError("power must be > 0");
}

void require_rate(double rate)
{
    if (std::isnan(rate) || rate < 0.0) throw DomainError("rate must be >= 0");
}

RateDecision perfect_csit(double g_hat, double power, Policy policy)
{
    RateDecision d;
    d.policy = policy;
    d.rate = std::log1p(power * g_hat);
    d.closed_form_rate = d.rate;
    return d;
}

// Derivative of R Q1(alpha, beta(R)) in R.
struct ThroughputSlope {
    double alpha;
    double sp; // P sigma^2
    ToleranceConfig tol;

    double operator()(double r) const
    {
        if (r <= 0.0) return 1.0;
        const double beta = std::sqrt(2.0 * std::expm1(r) / sp);
        const double shift = alpha - beta;
        const double density = std::exp(r - 0.5 * shift * shift) / sp * bessel_i0_scaled(alpha * beta);
        return marcum_q1(alpha, beta, tol) - r * density;
    }
};

} // namespace

std::string_view to_string(Policy p)
{
    switch (p) {
    case Policy::Lemma4Approx: return "lemma4";
    case Policy::ExactSearch: return "exact";
    case Policy::NoAdaptation: return "no_adaptation";
    case Policy::Genie: return "genie";
    }
    return "unknown";
}

Policy parse_policy(std::string_view name)
{
    if (name == "lemma4") return Policy::Lemma4Approx;
    if (name == "exact") return Policy::ExactSearch;
    if (name == "no_adaptation") return Policy::NoAdaptation;
    if (name == "genie") return Policy::Genie;
    throw DomainError("policy: unknown name '" + std::string(name) + "'");
}

double rate_to_beta(double rate, double sigma, double power)
{
    return std::sqrt(2.0 * std::expm1(rate) / (power * sigma * sigma));
}

double instantaneous_throughput(double rate, double g_hat, double sigma, double power, const ToleranceConfig& tol)
{
    require_rate(rate);
    require_inputs(g_hat, sigma, power);
    if (rate == 0.0) return 0.0;
    return rate * (1.0 - conditional_outage(rate, g_hat, sigma, power, tol));
}

double conditional_outage(double rate, double g_hat, double sigma, double power, const ToleranceConfig& tol)
{
    require_rate(rate);
    require_inputs(g_hat, sigma, power);
    if (rate == 0.0) return 0.0;
    if (sigma == 0.0) return std::log1p(power * g_hat) < rate ? 1.0 : 0.0;
    if (!std::isfinite(rate)) return 1.0;
    const double s = std::abs(sigma);
    return marcum_cdf(std::sqrt(2.0 * g_hat) / s, rate_to_beta(rate, s, power), tol);
}

double lemma4_closed_form(const SemiLinearFit& fit, double sigma, double power, bool* degenerate)
{
    if (degenerate) *degenerate = false;
    const double y = (1.0 + fit.o1 * fit.o2 - fit.o3) * std::exp(1.0) * std::sqrt(2.0 * power * sigma * sigma) /
                     (2.0 * fit.o1);
    constexpr double kInvE = 0.36787944117144232159552377016146087;
    if (std::isnan(y) || y < -kInvE) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    if (!std::isfinite(y)) return std::numeric_limits<double>::infinity();
    return std::max(0.0, 2.0 * lambert_w0(y) - 2.0);
}

RateDecision optimal_rate_lemma4(double g_hat, double sigma, double power, const SemiLinearFit& fit,
                                 const ToleranceConfig& tol)
{
    require_inputs(g_hat, sigma, power);
    if (sigma == 0.0) return perfect_csit(g_hat, power, Policy::Lemma4Approx);

    RateDecision d;
    d.policy = Policy::Lemma4Approx;
    const double r = fit.o1 > 0.0 ? lemma4_closed_form(fit, sigma, power, &d.degenerate)
                                  : std::numeric_limits<double>::infinity();
    d.closed_form_rate = r;
    bool in_region = false;
    if (std::isfinite(r) && !d.degenerate) {
        const double beta = rate_to_beta(r, sigma, power);
        in_region = beta >= fit.c1 && beta <= fit.c2;
    }
    if (in_region) {
        d.rate = r;
        d.conditional_outage = conditional_outage(r, g_hat, sigma, power, tol);
        return d;
    }
    const RateDecision exact = optimal_rate_exact(g_hat, sigma, power, tol);
    d.rate = exact.rate;
    d.conditional_outage = exact.conditional_outage;
    d.fallback = true;
    return d;
}

RateDecision optimal_rate_lemma4(double g_hat, double sigma, double power, FitVariant variant,
                                 const ToleranceConfig& tol)
{
    require_inputs(g_hat, sigma, power);
    if (sigma == 0.0) return perfect_csit(g_hat, power, Policy::Lemma4Approx);
    const double alpha = std::sqrt(2.0 * g_hat) / std::abs(sigma);
    if (alpha == 0.0 && (variant == FitVariant::Corollary1Exact || variant == FitVariant::Corollary1Asymptotic)) {
        // Corollary 1 is undefined at alpha = 0; only the search applies.
        RateDecision d = optimal_rate_exact(g_hat, sigma, power, tol);
        d.policy = Policy::Lemma4Approx;
        d.fallback = true;
        return d;
    }
    return optimal_rate_lemma4(g_hat, std::abs(sigma), power, make_fit(variant, alpha, tol), tol);
}

RateDecision optimal_rate_exact(double g_hat, double sigma, double power, const ToleranceConfig& tol)
{
    require_inputs(g_hat, sigma, power);
    if (sigma == 0.0) return perfect_csit(g_hat, power, Policy::ExactSearch);
    const double s = std::abs(sigma);
    const ThroughputSlope slope{std::sqrt(2.0 * g_hat) / s, power * s * s, tol};

    // The throughput rises from 0 at R = 0 and has a single peak; scan a
    // few points for the first sign change of the slope, then refine.
    double hi = std::log1p(power * (g_hat + 10.0 * s * std::sqrt(g_hat + 1.0)));
    double f_hi = slope(hi);
    for (int grow = 0; f_hi > 0.0 && grow < 20; ++grow) {
        hi *= 2.0;
        f_hi = slope(hi);
    }
    if (f_hi > 0.0) throw AccuracyError("optimal_rate_exact: could not bracket the maximum", hi);

    constexpr int kScan = 6;
    double lo = 0.0;
    double f_lo = 1.0;
    for (int i = 1; i < kScan; ++i) {
        const double r = hi * i / kScan;
        const double fr = slope(r);
        if (fr <= 0.0) {
            hi = r;
            f_hi = fr;
            break;
        }
        lo = r;
        f_lo = fr;
    }

    double rate = hi;
    if (f_hi == 0.0) {
        rate = hi;
    } else {
        std::uintmax_t iters = 100;
        const auto root = boost::math::tools::toms748_solve(
            slope, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(40), iters);
        rate = 0.5 * (root.first + root.second);
    }

    RateDecision d;
    d.policy = Policy::ExactSearch;
    d.rate = rate;
    d.closed_form_rate = rate;
    d.conditional_outage = conditional_outage(rate, g_hat, s, power, tol);
    return d;
}

double no_adaptation_rate(double power)
{
    if (!std::isfinite(power) || power <= 0.0) throw DomainError("power must be > 0");
    return lambert_w0(power);
}

double no_adaptation_throughput(double power)
{
    const double w = no_adaptation_rate(power);
    return w * std::exp(-std::expm1(w) / power);
}

double genie_throughput(double power)
{
    if (!std::isfinite(power) || power <= 0.0) throw DomainError("power must be > 0");
    return exp_integral_e1_scaled(1.0 / power);
}

} // namespace semiq
