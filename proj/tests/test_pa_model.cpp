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

#include "semiq/pa_model.hpp"
#include "semiq/philox.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <doctest.h>

using namespace semiq;

TEST_CASE("philox4x32-10 known answers")
{
    using C = Philox4x32::Counter;
    CHECK(Philox4x32(0)({0, 0, 0, 0}) == C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(Philox4x32(0xffffffffffffffffull)({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}) ==
          C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(Philox4x32(0x299f31d0a4093822ull)({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}) ==
          C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("uniforms stay in (0, 1]")
{
    CHECK(uniform_open0(0, 0) > 0.0);
    CHECK(uniform_open0(0xffffffffu, 0xffffffffu) == 1.0);
}

TEST_CASE("effective distance and correlation for the default scenario")
{
    PaScenario s;
    s.speed = 114.0 / 3.6;
    s.delay = 5e-3;
    const double lambda = kSpeedOfLight / 2.68e9;
    CHECK(effective_distance(s) == doctest::Approx(1.5 * lambda - s.speed * s.delay).epsilon(1e-14));
    CHECK(effective_distance(s) == doctest::Approx(0.0094589).epsilon(1e-4));

    const CorrelationState c = correlation_state(s);
    const double j = oracle::j0(2.0 * kPi * c.effective_distance / lambda);
    CHECK(c.jakes_offdiag == doctest::Approx(j).epsilon(1e-13));
    // Phi^(1/2) squared reproduces Phi.
    CHECK(c.phi1 * c.phi1 + c.phi2 * c.phi2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(2.0 * c.phi1 * c.phi2 == doctest::Approx(j).epsilon(1e-13));
    CHECK(c.sigma > 0.0);
    CHECK(c.sigma < 1.0);
}

TEST_CASE("matched speed gives perfect prediction, far mismatch decorrelates")
{
    const double lambda = kSpeedOfLight / 2.68e9;
    CHECK(correlation_sigma(0.0, lambda) == 0.0);
    CHECK(correlation_sigma(0.01, lambda) < correlation_sigma(0.03, lambda));
    // J0 vanishes at 2.404825557695773; sigma is then 1.
    CHECK(correlation_sigma(2.404825557695773 * lambda / (2.0 * kPi), lambda) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(correlation_sigma(-1.0, lambda), DomainError);
}

TEST_CASE("conditional gain cdf")
{
    CHECK(conditional_gain_cdf(1.0, 1.0, 0.5) ==
          doctest::Approx(oracle::frozen::kGainCdf_1_0p5_1).epsilon(1e-10));
    CHECK(conditional_gain_cdf(0.0, 1.0, 0.5) == 0.0);
    CHECK(conditional_gain_cdf(0.9, 1.0, 0.0) == 0.0);
    CHECK(conditional_gain_cdf(1.0, 1.0, 0.0) == 1.0);
    CHECK(conditional_gain_cdf(1.0, 1.0, -0.5) == conditional_gain_cdf(1.0, 1.0, 0.5));
    CHECK_THROWS_AS(conditional_gain_cdf(1.0, 1.0, 1.5), DomainError);
    CHECK_THROWS_AS(conditional_gain_cdf(-1.0, 1.0, 0.5), DomainError);
}

TEST_CASE("pdf integrates to cdf differences")
{
    for (auto [g_hat, sigma] : {std::pair{1.0, 0.5}, {0.3, 0.1}, {2.0, 0.9}, {0.0, 0.4}}) {
        const double lo = 0.2 * g_hat + 0.01;
        const double hi = 1.7 * g_hat + 0.5;
        const double mass = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [&](double x) { return conditional_gain_pdf(x, g_hat, sigma); }, lo, hi, 15, 1e-13);
        CAPTURE(g_hat);
        CAPTURE(sigma);
        CHECK(mass == doctest::Approx(conditional_gain_cdf(hi, g_hat, sigma) - conditional_gain_cdf(lo, g_hat, sigma))
                          .epsilon(1e-9));
    }
    CHECK_THROWS_AS(conditional_gain_pdf(1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("estimation error mapping")
{
    const EffectiveGain same = apply_estimation_error(1.234, 0.321, 1.0);
    CHECK(same.g_hat == 1.234);
    CHECK(same.sigma == 0.321);
    const EffectiveGain e = apply_estimation_error(2.0, 0.3, 0.9);
    CHECK(e.g_hat == doctest::Approx(0.81 * 2.0).epsilon(1e-15));
    CHECK(e.sigma == doctest::Approx(std::sqrt(0.81 * 0.09 + 0.19)).epsilon(1e-15));
    const EffectiveGain blind = apply_estimation_error(2.0, 0.3, 0.0);
    CHECK(blind.g_hat == 0.0);
    CHECK(blind.sigma == 1.0);
    CHECK_THROWS_AS(apply_estimation_error(1.0, 0.3, 1.1), DomainError);
}

TEST_CASE("noise draws are reproducible and correctly scaled")
{
    const ChannelNoise a = draw_noise(17, 123456789);
    const ChannelNoise b = draw_noise(17, 123456789);
    CHECK(a.h_hat == b.h_hat);
    CHECK(a.q == b.q);
    CHECK(a.z == b.z);
    CHECK(draw_noise(18, 123456789).h_hat != a.h_hat);

    constexpr int kN = 200000;
    double p_h = 0.0;
    double p_q = 0.0;
    double cross = 0.0;
    double g = 0.0;
    for (int i = 0; i < kN; ++i) {
        const ChannelNoise n = draw_noise(5, static_cast<std::uint64_t>(i));
        p_h += std::norm(n.h_hat);
        p_q += std::norm(n.q);
        cross += std::real(n.h_hat * std::conj(n.q));
        g += compose_channel(n, 0.4, 0.8).g;
    }
    CHECK(p_h / kN == doctest::Approx(1.0).epsilon(0.01));
    CHECK(p_q / kN == doctest::Approx(1.0).epsilon(0.01));
    CHECK(std::abs(cross / kN) < 0.01);
    CHECK(g / kN == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("compose channel reports the estimate consistently")
{
    const ChannelNoise n = draw_noise(3, 9);
    const ChannelDraw d = compose_channel(n, 0.6, 1.0);
    CHECK(d.g_hat == doctest::Approx(0.64 * std::norm(n.h_hat)).epsilon(1e-15));
    CHECK(d.g == doctest::Approx(std::norm(0.8 * n.h_hat + 0.6 * n.q)).epsilon(1e-14));
    CHECK(compose_channel(n, 0.0, 1.0).g == doctest::Approx(std::norm(n.h_hat)).epsilon(1e-15));
}

TEST_CASE("scenario validation")
{
    PaScenario s;
    CHECK_NOTHROW(s.validate());
    s.kappa = 1.2;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = {};
    s.power = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
}
