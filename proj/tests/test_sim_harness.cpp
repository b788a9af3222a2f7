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

#include "semiq/sim_harness.hpp"
#include "semiq/quadrature.hpp"

#include <doctest.h>

#include <cstring>

using namespace semiq;

namespace {

SweepSpec small_spec()
{
    SweepSpec s;
    s.scenario = scenario_from_units(2.68, 1.5, 114.0, 5.0, 0.0, 1.0);
    s.variable = SweepVariable::SnrDb;
    s.values = {5.0, 15.0, 25.0};
    s.realizations = 5000;
    s.seed = 99;
    s.policies = {Policy::Genie, Policy::Lemma4Approx, Policy::ExactSearch, Policy::NoAdaptation};
    return s;
}

bool same_bits(const SweepRow& a, const SweepRow& b)
{
    const double x[] = {a.value, a.mean_throughput, a.outage, a.ci95, a.expected_throughput};
    const double y[] = {b.value, b.mean_throughput, b.outage, b.ci95, b.expected_throughput};
    return std::memcmp(x, y, sizeof x) == 0 && a.n == b.n && a.fallbacks == b.fallbacks && a.policy == b.policy;
}

} // namespace

TEST_CASE("unit conversion at the boundary")
{
    const PaScenario s = scenario_from_units(2.68, 1.5, 114.0, 5.0, 10.0, 0.9);
    CHECK(s.carrier_freq == 2.68e9);
    CHECK(s.speed == doctest::Approx(114.0 / 3.6).epsilon(1e-15));
    CHECK(s.delay == doctest::Approx(5e-3).epsilon(1e-15));
    CHECK(s.power == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(s.kappa == 0.9);
    CHECK(apply_variable(s, SweepVariable::SnrDb, 20.0).power == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(apply_variable(s, SweepVariable::SpeedKmh, 36.0).speed == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(apply_variable(s, SweepVariable::DelayMs, 2.0).delay == doctest::Approx(2e-3).epsilon(1e-15));
    CHECK(apply_variable(s, SweepVariable::Kappa, 0.5).kappa == 0.5);
    CHECK_THROWS_AS(apply_variable(s, SweepVariable::Kappa, 1.5), DomainError);
}

TEST_CASE("sweep is bit-identical across worker counts and reruns")
{
    const SweepSpec spec = small_spec();
    RunOptions one;
    one.workers = 1;
    RunOptions three;
    three.workers = 3;
    const SweepResult a = run_sweep(spec, one);
    const SweepResult b = run_sweep(spec, three);
    const SweepResult c = run_sweep(spec, three);
    REQUIRE(a.rows.size() == 12);
    REQUIRE(b.rows.size() == 12);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(same_bits(a.rows[i], b.rows[i]));
        CHECK(same_bits(b.rows[i], c.rows[i]));
    }
}

TEST_CASE("different seeds give different estimates")
{
    SweepSpec s = small_spec();
    const SweepResult a = run_sweep(s);
    s.seed = 100;
    const SweepResult b = run_sweep(s);
    CHECK(a.rows[0].mean_throughput != b.rows[0].mean_throughput);
}

TEST_CASE("monte carlo agrees with closed forms")
{
    SweepSpec s = small_spec();
    s.realizations = 40000;
    s.policies = {Policy::Genie, Policy::NoAdaptation};
    const SweepResult r = run_sweep(s);
    for (const auto& row : r.rows) {
        CAPTURE(row.value);
        CHECK(!std::isnan(row.analytic));
        CHECK(std::abs(row.mean_throughput - row.analytic) < 4.0 * row.ci95);
        if (row.policy == Policy::Genie) {
            CHECK(row.outage == 0.0);
            CHECK(row.analytic == doctest::Approx(genie_throughput(std::pow(10.0, row.value / 10.0))).epsilon(1e-14));
        } else {
            CHECK(row.analytic ==
                  doctest::Approx(no_adaptation_throughput(std::pow(10.0, row.value / 10.0))).epsilon(1e-14));
        }
    }
}

TEST_CASE("realized and expected throughput agree for adaptive policies")
{
    SweepSpec s = small_spec();
    s.realizations = 20000;
    s.policies = {Policy::ExactSearch, Policy::Lemma4Approx};
    for (const auto& row : run_sweep(s).rows) {
        CHECK(std::isnan(row.analytic));
        CHECK(std::abs(row.mean_throughput - row.expected_throughput) < 4.0 * row.ci95);
        CHECK(row.outage > 0.0);
        CHECK(row.outage < 1.0);
        CHECK(row.n == 20000);
    }
}

TEST_CASE("single-point estimator")
{
    const PaScenario sc = scenario_from_units(2.68, 1.5, 114.0, 5.0, 20.0, 1.0);
    const McEstimate e = monte_carlo_expected_throughput(sc, Policy::Genie, 20000, 4);
    CHECK(e.n == 20000);
    CHECK(std::abs(e.mean - genie_throughput(100.0)) < 4.0 * e.ci95);
    CHECK_THROWS_AS(monte_carlo_expected_throughput(sc, Policy::Genie, 0, 4), DomainError);
}

TEST_CASE("spec validation")
{
    SweepSpec s = small_spec();
    s.values = {1.0, 1.0};
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = small_spec();
    s.realizations = 10;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = small_spec();
    s.policies = {Policy::Genie, Policy::Genie};
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = small_spec();
    s.values.clear();
    CHECK_THROWS_AS(run_sweep(s), DomainError);
}

TEST_CASE("presets carry the figure parameters")
{
    const auto f5 = preset("fig5");
    REQUIRE(f5.size() == 1);
    CHECK(f5[0].values.size() == 16);
    CHECK(f5[0].scenario.speed == doctest::Approx(114.0 / 3.6).epsilon(1e-15));
    const auto f6 = preset("fig6");
    REQUIRE(f6.size() == 3);
    CHECK(f6[0].values.size() == 11);
    CHECK(f6[2].label == "snr25");
    const auto f7 = preset("fig7");
    REQUIRE(f7.size() == 2);
    CHECK(f7[0].values.size() == 61);
    CHECK(f7[1].label == "v150");
    const auto f8 = preset("fig8");
    REQUIRE(f8.size() == 2);
    CHECK(f8[0].scenario.delay == doctest::Approx(5.35e-3).epsilon(1e-15));
    CHECK(f8[1].label == "delta4.68");
    CHECK(f8[0].values.size() == 81);
    CHECK_THROWS_AS(preset("fig9"), DomainError);
    for (auto v : {SweepVariable::SnrDb, SweepVariable::Kappa, SweepVariable::DelayMs, SweepVariable::SpeedKmh}) {
        CHECK(parse_variable(to_string(v)) == v);
    }
}

TEST_CASE("ci shrinks with the square root of the sample size")
{
    const PaScenario sc = scenario_from_units(2.68, 1.5, 114.0, 5.0, 15.0, 1.0);
    const McEstimate a = monte_carlo_expected_throughput(sc, Policy::ExactSearch, 10000, 21);
    const McEstimate b = monte_carlo_expected_throughput(sc, Policy::ExactSearch, 40000, 21);
    CHECK(a.ci95 / b.ci95 == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("perfect prediction makes adaptation match the genie")
{
    // v delta = d_a puts the receive antenna exactly where the pilot was sent.
    const double v_kmh = 1.5 * kSpeedOfLight / 2.68e9 / 5e-3 * 3.6;
    const PaScenario sc = scenario_from_units(2.68, 1.5, v_kmh, 5.0, 15.0, 1.0);
    CHECK(correlation_state(sc).sigma < 1e-6);
    const McEstimate g = monte_carlo_expected_throughput(sc, Policy::Genie, 20000, 8);
    const McEstimate e = monte_carlo_expected_throughput(sc, Policy::ExactSearch, 20000, 8);
    CHECK(std::abs(g.mean - e.mean) < g.ci95 + e.ci95);
}

TEST_CASE("monte carlo mean matches quadrature over the estimate distribution")
{
    // g_hat = (1 - sigma^2)|h_hat|^2 is exponential with mean 1 - sigma^2.
    const PaScenario sc = scenario_from_units(2.68, 1.5, 110.0, 5.0, 12.0, 1.0);
    const double sigma = correlation_state(sc).sigma;
    const double mean_g = 1.0 - sigma * sigma;
    auto f = [&](double g) {
        const double r = optimal_rate_exact(g, sigma, sc.power).rate;
        return instantaneous_throughput(r, g, sigma, sc.power) * std::exp(-g / mean_g) / mean_g;
    };
    const auto q = integrate(f, 0.0, 40.0 * mean_g, ToleranceConfig{1e-9, 1e-9, 5000, 2000});
    const McEstimate mc = monte_carlo_expected_throughput(sc, Policy::ExactSearch, 50000, 13);
    CHECK(std::abs(mc.mean - q.value) < 3.0 * mc.ci95);
    CHECK(std::abs(mc.expected - q.value) < 3.0 * mc.ci95);
}

TEST_CASE("throughput is sensitive to the speed")
{
    SweepSpec s;
    s.scenario = scenario_from_units(2.68, 1.5, 114.0, 5.0, 10.0, 1.0);
    s.variable = SweepVariable::SpeedKmh;
    s.values = {96.0, 121.0, 146.0};
    s.realizations = 20000;
    s.policies = {Policy::ExactSearch};
    const SweepResult r = run_sweep(s);
    const double peak = r.rows[1].mean_throughput;
    const double gap = peak - no_adaptation_throughput(10.0);
    CHECK(gap > 0.0);
    CHECK(peak - r.rows[0].mean_throughput > 0.05 * gap);
    CHECK(peak - r.rows[2].mean_throughput > 0.05 * gap);
}
