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

#include <string>
#include <string_view>

namespace semiq {

enum class FitVariant { Lemma1, Corollary1Exact, Corollary1Asymptotic, Corollary2 };

/// A straight line y = o1 (beta - o2) + o3 through the anchor (beta0, y0),
/// clamped to 0 below c1 and to 1 above c2. Approximates the CDF
/// 1 - Q1(alpha, beta) in beta.
struct SemiLinearFit {
    double alpha = 0.0;
    double beta0 = 0.0;
    double slope = 0.0;
    double y0 = 0.0;
    double c1 = 0.0;  // clamped at 0
    double c2 = 0.0;
    FitVariant variant = FitVariant::Lemma1;
    double o1 = 0.0;
    double o2 = 0.0;
    double o3 = 0.0;

    /// Unclamped line value.
    double line(double beta) const { return o1 * (beta - o2) + o3; }

    /// Root of the line (the lower clamp before clipping at 0).
    double unclamped_c1() const { return beta0 - y0 / slope; }
};

/// Anchor at the inflection point (alpha + sqrt(alpha^2 + 2)) / 2 with the
/// exact slope and CDF value there.
SemiLinearFit fit_lemma1(double alpha, const ToleranceConfig& tol = {});

/// Anchor at beta0 = alpha. With use_bessel_asymptote the slope is
/// 1/sqrt(2 pi) and the anchor value uses the large-argument form of I0.
SemiLinearFit fit_corollary1(double alpha, bool use_bessel_asymptote);

/// Anchor at beta0 = (alpha + sqrt(2)) / 2, intended for small alpha.
SemiLinearFit fit_corollary2(double alpha, const ToleranceConfig& tol = {});

SemiLinearFit make_fit(FitVariant variant, double alpha, const ToleranceConfig& tol = {});

/// Thresholds for the automatic variant choice.
struct VariantSelection {
    double small_alpha = 1.0;  // below: Corollary2
    bool prefer_lemma1 = true; // when set, Lemma1 is always used
};

SemiLinearFit fit_auto(double alpha, const VariantSelection& sel = {}, const ToleranceConfig& tol = {});

/// Evaluates the clamped line; result is always in [0, 1].
double approx_cdf(const SemiLinearFit& fit, double beta);

std::string_view to_string(FitVariant v);

/// Accepts lemma1, corollary1, corollary1-asymptotic, corollary2.
FitVariant parse_variant(std::string_view name);

} // namespace semiq
