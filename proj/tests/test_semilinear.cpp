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

#include "oracles.hpp"

#include "semiq/semilinear.hpp"

#include <doctest.h>

using namespace semiq;
namespace fz = oracle::frozen;

namespace {

// Numerical d/dbeta of the exact CDF.
double cdf_slope(double a, double b)
{
    const double h = 1e-5;
    return (oracle::marcum_cdf(a, b + h) - oracle::marcum_cdf(a, b - h)) / (2.0 * h);
}

const FitVariant kVariants[] = {FitVariant::Lemma1, FitVariant::Corollary1Exact, FitVariant::Corollary1Asymptotic,
                                FitVariant::Corollary2};

} // namespace

TEST_CASE("lemma1 fit at alpha = 2")
{
    const SemiLinearFit f = fit_lemma1(2.0);
    CHECK(f.beta0 == doctest::Approx(fz::kLemma1Beta0_2).epsilon(1e-15));
    CHECK(f.slope == doctest::Approx(fz::kLemma1Slope_2).epsilon(1e-12));
    CHECK(f.y0 == doctest::Approx(fz::kLemma1Y0_2).epsilon(1e-12));
    CHECK(f.slope == doctest::Approx(cdf_slope(2.0, f.beta0)).epsilon(1e-7));
}

TEST_CASE("corollary fits")
{
    CHECK(fit_corollary1(3.0, true).c2 == doctest::Approx(fz::kCor1AsympC2_3).epsilon(1e-14));
    CHECK(fit_corollary1(3.0, false).y0 == doctest::Approx(fz::kCor1ExactY0_3).epsilon(1e-12));
    CHECK(fit_corollary1(3.0, true).slope == doctest::Approx(1.0 / kSqrt2Pi).epsilon(1e-15));
    CHECK(fit_corollary2(2.0).beta0 == doctest::Approx((2.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-15));
    CHECK_THROWS_AS(fit_corollary1(0.0, false), DomainError);
    CHECK_THROWS_AS(fit_lemma1(-0.1), DomainError);
    CHECK_THROWS_AS(fit_lemma1(std::nan("")), DomainError);
}

TEST_CASE("clamps lie on the fitted line")
{
    for (double a : {0.2, 0.5, 2.0, 3.0, 8.0}) {
        for (FitVariant v : kVariants) {
            // The large-alpha Bessel asymptote drives y0 negative for small alpha.
            if (v == FitVariant::Corollary1Asymptotic && a < 0.5) continue;
            const SemiLinearFit f = make_fit(v, a);
            CAPTURE(a);
            CAPTURE(to_string(v));
            CHECK(f.slope > 0.0);
            CHECK(f.c1 >= 0.0);
            CHECK(f.c1 < f.beta0);
            CHECK(f.c2 > f.beta0);
            CHECK(f.line(f.c2) == doctest::Approx(1.0).epsilon(1e-12));
            if (f.unclamped_c1() >= 0.0) CHECK(std::abs(f.line(f.c1)) < 1e-12);
            CHECK(f.line(f.beta0) == doctest::Approx(f.y0).epsilon(1e-14));
        }
    }
}

TEST_CASE("approximation is a clamped nondecreasing function")
{
    for (double a : {0.5, 2.0, 3.0}) {
        for (FitVariant v : kVariants) {
            const SemiLinearFit f = make_fit(v, a);
            double prev = 0.0;
            for (int i = 0; i <= 1000; ++i) {
                const double z = approx_cdf(f, 0.01 * i);
                CHECK(z >= prev);
                CHECK(z >= 0.0);
                CHECK(z <= 1.0);
                prev = z;
            }
            CHECK(approx_cdf(f, f.c2 + 1.0) == 1.0);
        }
    }
    CHECK_THROWS_AS(approx_cdf(fit_lemma1(1.0), -0.5), DomainError);
    CHECK_THROWS_AS(approx_cdf(fit_lemma1(1.0), std::nan("")), DomainError);
}

TEST_CASE("exact-anchor variants touch the CDF at beta0")
{
    for (double a : {0.5, 2.0, 3.0}) {
        for (FitVariant v : {FitVariant::Lemma1, FitVariant::Corollary1Exact, FitVariant::Corollary2}) {
            const SemiLinearFit f = make_fit(v, a);
            CHECK(std::abs(approx_cdf(f, f.beta0) - oracle::marcum_cdf(a, f.beta0)) < 1e-9);
        }
    }
}

TEST_CASE("variant names round trip and auto selection")
{
    for (FitVariant v : kVariants) CHECK(parse_variant(to_string(v)) == v);
    CHECK_THROWS_AS(parse_variant("lemma9"), DomainError);
    CHECK(fit_auto(0.3).variant == FitVariant::Lemma1);
    CHECK(fit_auto(0.3, {1.0, false}).variant == FitVariant::Corollary2);
    CHECK(fit_auto(4.0, {1.0, false}).variant != FitVariant::Corollary2);
}

TEST_CASE("lemma1 error changes sign across the anchor")
{
    // beta0 only approximates the inflection point; at alpha = 0.5 the
    // error keeps one sign on both sides.
    for (double a : {1.0, 2.0, 3.0, 5.0}) {
        const SemiLinearFit f = fit_lemma1(a);
        const double d = 0.25 * std::min(f.beta0 - f.c1, f.c2 - f.beta0);
        const double lo = approx_cdf(f, f.beta0 - d) - oracle::marcum_cdf(a, f.beta0 - d);
        const double hi = approx_cdf(f, f.beta0 + d) - oracle::marcum_cdf(a, f.beta0 + d);
        CAPTURE(a);
        CHECK(lo * hi < 0.0);
    }
}

TEST_CASE("anchors of the variants agree in their regimes")
{
    for (double a : {3.5, 4.0, 6.0, 10.0}) {
        CHECK(std::abs(fit_lemma1(a).beta0 - fit_corollary1(a, false).beta0) / a < 0.04);
    }
    for (double a : {0.0, 0.1, 0.2, 0.3}) {
        const double b1 = fit_lemma1(a).beta0;
        CHECK(std::abs(b1 - fit_corollary2(a).beta0) / b1 < 0.02);
    }
    CHECK(fit_corollary2(0.5).beta0 == doctest::Approx(0.957107).epsilon(1e-6));
    CHECK(approx_cdf(fit_corollary2(0.5), fit_corollary2(0.5).beta0) ==
          doctest::Approx(oracle::marcum_cdf(0.5, 0.957107)).epsilon(1e-6));
}
