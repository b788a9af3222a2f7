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

#include "semiq/io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace semiq {

namespace {

constexpr double kZ95 = 1.96;

// Streaming moments with Chan's pairwise merge.
struct Moments {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x)
    {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    static Moments merge(const Moments& a, const Moments& b)
    {
        if (a.n == 0) return b;
        if (b.n == 0) return a;
        Moments r;
        r.n = a.n + b.n;
        const double na = static_cast<double>(a.n);
        const double nb = static_cast<double>(b.n);
        const double delta = b.mean - a.mean;
        r.mean = a.mean + delta * nb / static_cast<double>(r.n);
        r.m2 = a.m2 + b.m2 + delta * delta * na * nb / static_cast<double>(r.n);
        return r;
    }
};

struct PolicyAcc {
    Moments realized;
    Moments expected;
    std::int64_t outages = 0;
    std::int64_t fallbacks = 0;

    static PolicyAcc merge(const PolicyAcc& a, const PolicyAcc& b)
    {
        return {Moments::merge(a.realized, b.realized), Moments::merge(a.expected, b.expected),
                a.outages + b.outages, a.fallbacks + b.fallbacks};
    }
};

struct PointSetup {
    PaScenario scenario;
    double sigma = 0.0;
    double fixed_rate = 0.0;
};

PointSetup setup_point(const PaScenario& s)
{
    s.validate();
    return {s, correlation_state(s).sigma, no_adaptation_rate(s.power)};
}

PolicyAcc run_shard(const PointSetup& pt, Policy policy, std::uint64_t seed, std::int64_t begin, std::int64_t end,
                    FitVariant variant, const ToleranceConfig& tol)
{
    PolicyAcc acc;
    const double power = pt.scenario.power;
    const double kappa = pt.scenario.kappa;
    for (std::int64_t i = begin; i < end; ++i) {
        const ChannelDraw draw = compose_channel(draw_noise(seed, static_cast<std::uint64_t>(i)), pt.sigma, kappa);
        const double capacity = std::log1p(draw.g * power);
        const EffectiveGain eff = apply_estimation_error(draw.g_hat, pt.sigma, kappa);
        double rate = 0.0;
        double expected = 0.0;
        switch (policy) {
        case Policy::Genie:
            rate = capacity;
            expected = capacity;
            break;
        case Policy::NoAdaptation:
            rate = pt.fixed_rate;
            expected = instantaneous_throughput(rate, eff.g_hat, eff.sigma, power, tol);
            break;
        case Policy::Lemma4Approx: {
            const RateDecision d = optimal_rate_lemma4(eff.g_hat, eff.sigma, power, variant, tol);
            rate = d.rate;
            expected = d.rate * (1.0 - d.conditional_outage);
            if (d.fallback) ++acc.fallbacks;
            break;
        }
        case Policy::ExactSearch: {
            const RateDecision d = optimal_rate_exact(eff.g_hat, eff.sigma, power, tol);
            rate = d.rate;
            expected = d.rate * (1.0 - d.conditional_outage);
            break;
        }
        }
        const bool decoded = capacity >= rate;
        if (!decoded) ++acc.outages;
        acc.realized.add(decoded ? rate : 0.0);
        acc.expected.add(expected);
    }
    return acc;
}

PolicyAcc reduce(const std::vector<PolicyAcc>& parts, std::size_t lo, std::size_t hi)
{
    if (hi - lo == 1) return parts[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return PolicyAcc::merge(reduce(parts, lo, mid), reduce(parts, mid, hi));
}

int resolve_workers(int requested)
{
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs task(i) for i in [0, count) on a fixed pool; results are written by
// index so scheduling order never reaches the output.
template <class Task>
void parallel_for(std::size_t count, int workers, Task task)
{
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto body = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    const int n = std::min<int>(workers, static_cast<int>(std::max<std::size_t>(count, 1)));
    if (n <= 1) {
        body();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(n));
        for (int w = 0; w < n; ++w) pool.emplace_back(body);
    }
    if (failure) std::rethrow_exception(failure);
}

double analytic_value(Policy p, double power)
{
    switch (p) {
    case Policy::NoAdaptation: return no_adaptation_throughput(power);
    case Policy::Genie: return genie_throughput(power);
    default: return std::numeric_limits<double>::quiet_NaN();
    }
}

SweepRow make_row(double value, Policy p, const PolicyAcc& acc, double power)
{
    SweepRow row;
    row.value = value;
    row.policy = p;
    row.n = acc.realized.n;
    row.mean_throughput = acc.realized.mean;
    row.outage = static_cast<double>(acc.outages) / static_cast<double>(row.n);
    const double var = row.n > 1 ? acc.realized.m2 / static_cast<double>(row.n - 1) : 0.0;
    row.ci95 = kZ95 * std::sqrt(var / static_cast<double>(row.n));
    row.expected_throughput = acc.expected.mean;
    row.analytic = analytic_value(p, power);
    row.fallbacks = acc.fallbacks;
    return row;
}

} // namespace

std::string_view to_string(SweepVariable v)
{
    switch (v) {
    case SweepVariable::SnrDb: return "snr_db";
    case SweepVariable::Kappa: return "kappa";
    case SweepVariable::DelayMs: return "delay_ms";
    case SweepVariable::SpeedKmh: return "speed_kmh";
    }
    return "unknown";
}

SweepVariable parse_variable(std::string_view name)
{
    if (name == "snr_db") return SweepVariable::SnrDb;
    if (name == "kappa") return SweepVariable::Kappa;
    if (name == "delay_ms") return SweepVariable::DelayMs;
    if (name == "speed_kmh") return SweepVariable::SpeedKmh;
    throw DomainError("variable: unknown name '" + std::string(name) + "'");
}

PaScenario scenario_from_units(double fc_ghz, double da_wavelengths, double v_kmh, double delta_ms, double snr_db,
                               double kappa)
{
    PaScenario s;
    s.carrier_freq = fc_ghz * 1e9;
    s.antenna_sep_wavelengths = da_wavelengths;
    s.speed = v_kmh / 3.6;
    s.delay = delta_ms * 1e-3;
    s.power = std::pow(10.0, snr_db / 10.0);
    s.kappa = kappa;
    s.validate();
    return s;
}

PaScenario apply_variable(const PaScenario& base, SweepVariable variable, double value)
{
    PaScenario s = base;
    switch (variable) {
    case SweepVariable::SnrDb: s.power = std::pow(10.0, value / 10.0); break;
    case SweepVariable::Kappa:
        if (!(value >= 0.0 && value <= 1.0)) throw DomainError("kappa sweep values must lie in [0, 1]");
        s.kappa = value;
        break;
    case SweepVariable::DelayMs: s.delay = value * 1e-3; break;
    case SweepVariable::SpeedKmh: s.speed = value / 3.6; break;
    }
    s.validate();
    return s;
}

void SweepSpec::validate() const
{
    scenario.validate();
    detail::require(!values.empty(), "values must not be empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        detail::require(std::isfinite(values[i]), "values must be finite");
        if (i > 0) detail::require(values[i] > values[i - 1], "values must be strictly increasing");
        apply_variable(scenario, variable, values[i]);
    }
    detail::require(realizations >= 1000, "realizations must be >= 1000");
    detail::require(!policies.empty(), "policies must not be empty");
    for (std::size_t i = 0; i < policies.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) detail::require(policies[i] != policies[j], "policies must be distinct");
    }
}

SweepResult run_sweep(const SweepSpec& spec, const RunOptions& options)
{
    spec.validate();
    options.tol.validate();
    detail::require(options.shard_size > 0, "shard_size must be > 0");

    std::vector<PointSetup> points;
    points.reserve(spec.values.size());
    for (double v : spec.values) points.push_back(setup_point(apply_variable(spec.scenario, spec.variable, v)));

    const std::int64_t shards = (spec.realizations + options.shard_size - 1) / options.shard_size;
    const std::size_t n_pol = spec.policies.size();
    const std::size_t per_point = static_cast<std::size_t>(shards) * n_pol;
    std::vector<PolicyAcc> parts(points.size() * per_point);

    parallel_for(parts.size(), resolve_workers(options.workers), [&](std::size_t task) {
        const std::size_t point = task / per_point;
        const std::size_t rest = task % per_point;
        const std::size_t pol = rest / static_cast<std::size_t>(shards);
        const std::int64_t shard = static_cast<std::int64_t>(rest % static_cast<std::size_t>(shards));
        const std::int64_t begin = shard * options.shard_size;
        const std::int64_t end = std::min(spec.realizations, begin + options.shard_size);
        parts[task] = run_shard(points[point], spec.policies[pol], spec.seed, begin, end, spec.lemma4_variant,
                                options.tol);
    });

    SweepResult result;
    result.spec = spec;
    for (std::size_t p = 0; p < points.size(); ++p) {
        for (std::size_t k = 0; k < n_pol; ++k) {
            const std::size_t lo = p * per_point + k * static_cast<std::size_t>(shards);
            const PolicyAcc acc = reduce(parts, lo, lo + static_cast<std::size_t>(shards));
            result.rows.push_back(make_row(spec.values[p], spec.policies[k], acc, points[p].scenario.power));
        }
    }
    return result;
}

McEstimate monte_carlo_expected_throughput(const PaScenario& scenario, Policy policy, std::int64_t realizations,
                                           std::uint64_t seed, const RunOptions& options)
{
    detail::require(realizations >= 1, "realizations must be >= 1");
    detail::require(options.shard_size > 0, "shard_size must be > 0");
    const PointSetup pt = setup_point(scenario);
    const std::int64_t shards = (realizations + options.shard_size - 1) / options.shard_size;
    std::vector<PolicyAcc> parts(static_cast<std::size_t>(shards));
    parallel_for(parts.size(), resolve_workers(options.workers), [&](std::size_t s) {
        const std::int64_t begin = static_cast<std::int64_t>(s) * options.shard_size;
        const std::int64_t end = std::min(realizations, begin + options.shard_size);
        parts[s] = run_shard(pt, policy, seed, begin, end, FitVariant::Corollary2, options.tol);
    });
    const SweepRow row = make_row(0.0, policy, reduce(parts, 0, parts.size()), scenario.power);
    return {row.mean_throughput, row.ci95, row.outage, row.expected_throughput, row.n, row.fallbacks};
}

std::vector<SweepSpec> preset(std::string_view name)
{
    auto base = [](double v_kmh, double delta_ms, double snr_db) {
        return scenario_from_units(2.68, 1.5, v_kmh, delta_ms, snr_db, 1.0);
    };
    std::vector<SweepSpec> out;
    if (name == "fig5") {
        SweepSpec s;
        s.scenario = base(114.0, 5.0, 0.0);
        s.variable = SweepVariable::SnrDb;
        s.values = linear_range(0.0, 2.0, 30.0);
        s.policies = {Policy::Genie, Policy::Lemma4Approx, Policy::ExactSearch, Policy::NoAdaptation};
        out.push_back(s);
    } else if (name == "fig6") {
        for (double snr : {10.0, 19.0, 25.0}) {
            SweepSpec s;
            s.scenario = base(114.5, 5.0, snr);
            s.variable = SweepVariable::Kappa;
            s.values = linear_range(0.5, 0.05, 1.0);
            s.policies = {Policy::Lemma4Approx, Policy::ExactSearch};
            s.label = "snr" + format_double(snr);
            out.push_back(s);
        }
    } else if (name == "fig7") {
        for (double v : {120.0, 150.0}) {
            SweepSpec s;
            s.scenario = base(v, 5.0, 23.0);
            s.variable = SweepVariable::DelayMs;
            s.values = linear_range(2.0, 0.1, 8.0);
            s.policies = {Policy::ExactSearch};
            s.label = "v" + format_double(v);
            out.push_back(s);
        }
    } else if (name == "fig8") {
        for (double delta : {5.35, 4.68}) {
            SweepSpec s;
            s.scenario = base(114.0, delta, 10.0);
            s.variable = SweepVariable::SpeedKmh;
            s.values = linear_range(80.0, 1.0, 160.0);
            s.policies = {Policy::ExactSearch};
            s.label = "delta" + format_double(delta);
            out.push_back(s);
        }
    } else {
        throw DomainError("preset: unknown name '" + std::string(name) + "'");
    }
    return out;
}

} // namespace semiq
