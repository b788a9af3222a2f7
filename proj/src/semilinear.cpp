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

#include "semiq/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace semiq {

namespace {

void require_alpha(double alpha)
{
    if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
    if (alpha < 0.0) throw DomainError("alpha must be >= 0");
}

// Shared construction for anchors on the exact CDF: slope is the density
// beta0 exp(-(alpha^2 + beta0^2)/2) I0(alpha beta0), formed in log-space
// through the scaled Bessel function.
SemiLinearFit exact_anchor_fit(double alpha, double beta0, FitVariant variant, const ToleranceConfig& tol)
{
    SemiLinearFit f;
    f.alpha = alpha;
    f.beta0 = beta0;
    f.variant = variant;
    const double shift = alpha - beta0;
    f.slope = beta0 * std::exp(-0.5 * shift * shift) * bessel_i0_scaled(alpha * beta0);
    f.y0 = marcum_cdf(alpha, beta0, tol);
    f.c1 = std::max(0.0, beta0 - f.y0 / f.slope);
    f.c2 = beta0 + (1.0 - f.y0) / f.slope;
    f.o1 = f.slope;
    f.o2 = beta0;
    f.o3 = f.y0;
    return f;
}

} // namespace

SemiLinearFit fit_lemma1(double alpha, const ToleranceConfig& tol)
{
    require_alpha(alpha);
    const double beta0 = 0.5 * (alpha + std::sqrt(alpha * alpha + 2.0));
    return exact_anchor_fit(alpha, beta0, FitVariant::Lemma1, tol);
}

SemiLinearFit fit_corollary1(double alpha, bool use_bessel_asymptote)
{
    require_alpha(alpha);
    if (alpha <= 0.0) throw DomainError("alpha must be > 0 for corollary1");
    SemiLinearFit f;
    f.alpha = alpha;
    f.beta0 = alpha;
    if (use_bessel_asymptote) {
        f.variant = FitVariant::Corollary1Asymptotic;
        f.slope = 1.0 / kSqrt2Pi;
        f.y0 = 0.5 * (1.0 - 1.0 / (kSqrt2Pi * alpha));
    } else {
        f.variant = FitVariant::Corollary1Exact;
        const double s = bessel_i0_scaled(alpha * alpha);
        f.slope = alpha * s;
        f.y0 = 0.5 * (1.0 - s);
    }
    f.c1 = std::max(0.0, alpha - f.y0 / f.slope);
    f.c2 = alpha + (1.0 - f.y0) / f.slope;
    f.o1 = f.slope;
    f.o2 = alpha;
    f.o3 = f.y0;
    return f;
}

SemiLinearFit fit_corollary2(double alpha, const ToleranceConfig& tol)
{
    require_alpha(alpha);
    const double beta0 = 0.5 * (alpha + std::sqrt(2.0));
    return exact_anchor_fit(alpha, beta0, FitVariant::Corollary2, tol);
}

SemiLinearFit make_fit(FitVariant variant, double alpha, const ToleranceConfig& tol)
{
    switch (variant) {
    case FitVariant::Lemma1: return fit_lemma1(alpha, tol);
    case FitVariant::Corollary1Exact: return fit_corollary1(alpha, false);
    case FitVariant::Corollary1Asymptotic: return fit_corollary1(alpha, true);
    case FitVariant::Corollary2: return fit_corollary2(alpha, tol);
    }
    throw DomainError("unknown fit variant");
}

SemiLinearFit fit_auto(double alpha, const VariantSelection& sel, const ToleranceConfig& tol)
{
    if (sel.prefer_lemma1) return fit_lemma1(alpha, tol);
    if (alpha < sel.small_alpha) return fit_corollary2(alpha, tol);
    return fit_corollary1(alpha, false);
}

double approx_cdf(const SemiLinearFit& fit, double beta)
{
    if (std::isnan(beta)) throw DomainError("beta must be a number");
    if (beta < 0.0) throw DomainError("beta must be >= 0");
    if (beta < fit.c1) return 0.0;
    if (beta > fit.c2) return 1.0;
    return std::clamp(fit.line(beta), 0.0, 1.0);
}

std::string_view to_string(FitVariant v)
{
    switch (v) {
    case FitVariant::Lemma1: return "lemma1";
    case FitVariant::Corollary1Exact: return "corollary1";
    case FitVariant::Corollary1Asymptotic: return "corollary1-asymptotic";
    case FitVariant::Corollary2: return "corollary2";
    }
    return "unknown";
}

FitVariant parse_variant(std::string_view name)
{
    if (name == "lemma1") return FitVariant::Lemma1;
    if (name == "corollary1") return FitVariant::Corollary1Exact;
    if (name == "corollary1-asymptotic") return FitVariant::Corollary1Asymptotic;
    if (name == "corollary2") return FitVariant::Corollary2;
    throw DomainError("variant: unknown name '" + std::string(name) + "'");
}

} // namespace semiq
