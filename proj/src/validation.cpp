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

#include "semiq/validation.hpp"

#include "semiq/closed_integrals.hpp"
#include "semiq/io.hpp"
#include "semiq/pa_model.hpp"
#include "semiq/philox.hpp"
#include "semiq/rate_adapt.hpp"
#include "semiq/semilinear.hpp"
#include "semiq/sim_harness.hpp"
#include "semiq/specfun.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <exception>
#include <map>

namespace semiq::validation {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* f, ...)
{
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

// Runs body, which fills passed/detail; records time and turns exceptions
// and overrun budgets into failures.
template <class Body>
CheckResult timed(const char* id, const char* name, double budget_s, const Options& opt, Body body)
{
    CheckResult r;
    r.id = id;
    r.name = name;
    const auto t0 = Clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (budget_s > 0.0 && r.seconds > budget_s) {
        r.passed = false;
        r.detail += fmt("; runtime %.1f s exceeds %.0f s budget", r.seconds, budget_s);
    }
    if (opt.on_result) opt.on_result(r);
    return r;
}

double rel_err(double approx, double exact) { return std::abs(approx - exact) / std::abs(exact); }

// Uniform in [lo, hi) from draw `index` of a fixed validation stream.
double uniform_at(std::uint64_t seed, std::uint64_t index, std::uint32_t stream, double lo, double hi)
{
    const auto b = Philox4x32(seed).block(index, stream);
    return lo + (hi - lo) * (uniform_open0(b[0], b[1]) - 0x1.0p-53);
}

SemiLinearFit maybe_faulty(SemiLinearFit f, const Options& opt)
{
    if (opt.inject_fault == "slope-sign") {
        f.slope = -f.slope;
        f.o1 = -f.o1;
    }
    return f;
}

const FitVariant kAllVariants[] = {FitVariant::Lemma1, FitVariant::Corollary1Exact,
                                   FitVariant::Corollary1Asymptotic, FitVariant::Corollary2};

bool anchored_on_curve(FitVariant v) { return v != FitVariant::Corollary1Asymptotic; }

double fig1_bound(double alpha, FitVariant v)
{
    for (const auto& b : fig1_bounds()) {
        if (b.alpha == alpha && to_string(v) == b.variant) return b.bound;
    }
    throw DomainError("no Fig.-1 bound recorded for this case");
}

struct Fig1Stats {
    double anchor_error = 0.0;
    double mid_error = 0.0;
    bool monotone = true;
};

Fig1Stats fig1_stats(const SemiLinearFit& fit, int points)
{
    Fig1Stats s;
    const double hi = fit.c2 + 1.0;
    double prev = -1.0;
    for (int i = 0; i <= points; ++i) {
        const double beta = hi * i / points;
        const double z = approx_cdf(fit, beta);
        if (z < prev) s.monotone = false;
        prev = z;
        if (beta >= fit.c1 && beta <= fit.c2) {
            s.mid_error = std::max(s.mid_error, std::abs(z - marcum_cdf(fit.alpha, beta)));
        }
    }
    s.anchor_error = std::abs(approx_cdf(fit, fit.beta0) - marcum_cdf(fit.alpha, fit.beta0));
    return s;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf)
{
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

// Independent maximization of R exp(-(e^R - 1)/P) by golden section.
double fixed_rate_max(double power)
{
    auto f = [power](double r) { return r * std::exp(-std::expm1(r) / power); };
    double a = 0.0;
    double b = std::log1p(power) + 1.0;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > 1e-12) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return f(0.5 * (a + b));
}

double argmax_value(const SweepResult& r, Policy p)
{
    double best = -1.0;
    double at = std::nan("");
    for (const auto& row : r.rows) {
        if (row.policy == p && row.mean_throughput > best) {
            best = row.mean_throughput;
            at = row.value;
        }
    }
    return at;
}

CheckResult monotonicity_check(const Options& opt)
{
    return timed("approx_monotonicity", "approximation is nondecreasing in beta", 0.0, opt, [&](CheckResult& r) {
        int bad = 0;
        std::string where;
        for (double alpha : {0.5, 2.0, 3.0}) {
            for (FitVariant v : kAllVariants) {
                const SemiLinearFit fit = maybe_faulty(make_fit(v, alpha), opt);
                const Fig1Stats s = fig1_stats(fit, 400);
                if (!s.monotone) {
                    ++bad;
                    where += fmt(" alpha=%g/%s", alpha, std::string(to_string(v)).c_str());
                }
            }
        }
        r.passed = bad == 0;
        r.detail = bad == 0 ? "12 fits monotone" : fmt("%d fits not monotone:", bad) + where;
    });
}

CheckResult antiderivative_check(const Options& opt)
{
    return timed("antiderivatives", "F1..F4 differentiate to their integrands", 0.0, opt, [&](CheckResult& r) {
        double worst = 0.0;
        for (int i = 0; i < 40; ++i) {
            const double x = uniform_at(7, i, 0, 0.1, 6.0);
            const double m = uniform_at(7, i, 1, 0.2, 3.0);
            const double a = uniform_at(7, i, 2, 0.3, 5.0);
            const LineCoeffs c{uniform_at(7, i, 3, 0.5, 2.0), -uniform_at(7, i, 4, 0.1, 0.6)};
            const double h = 1e-5;
            const double lg = std::log1p(a * x);
            const double line = c.n2 * x + c.n1;
            auto d = [h, x](auto f) { return (f(x + h) - f(x - h)) / (2.0 * h); };
            worst = std::max(worst, std::abs(d([&](double t) { return antiderivative::f1(t, m, a); }) -
                                             std::exp(-m * x) * lg));
            worst = std::max(worst, std::abs(d([&](double t) { return antiderivative::f2(t, m, a, c); }) -
                                             line * std::exp(-m * x) * lg));
            worst = std::max(worst, std::abs(d([&](double t) { return antiderivative::f3(t, a); }) - lg));
            worst = std::max(worst, std::abs(d([&](double t) { return antiderivative::f4(t, a, c); }) - line * lg));
        }
        r.passed = worst <= 1e-6;
        r.detail = fmt("worst |dF/dx - integrand| = %.2e (limit 1e-6)", worst);
    });
}

} // namespace

const std::vector<Fig1Bound>& fig1_bounds()
{
    // Worst mid-branch error on a 2000-interval grid, rounded up by 1e-3.
    static const std::vector<Fig1Bound> bounds = {
        {0.5, "lemma1", 0.135},  {0.5, "corollary1", 0.146}, {0.5, "corollary1-asymptotic", 0.145},
        {0.5, "corollary2", 0.133}, {2.0, "lemma1", 0.110}, {2.0, "corollary1", 0.104},
        {2.0, "corollary1-asymptotic", 0.096}, {2.0, "corollary2", 0.074}, {3.0, "lemma1", 0.108},
        {3.0, "corollary1", 0.105}, {3.0, "corollary1-asymptotic", 0.101}, {3.0, "corollary2", 0.189},
    };
    return bounds;
}

CheckResult criterion_oracle_fidelity(const Options& opt)
{
    return timed("1", "oracle fidelity", 1.0, opt, [&](CheckResult& r) {
        double id_err = 0.0;
        for (double a : {0.5, 1.0, 2.0, 3.0, 5.0}) {
            id_err = std::max(id_err, std::abs(marcum_q1(a, a) - 0.5 * (1.0 + bessel_i0_scaled(a * a))));
        }
        double d_err = 0.0;
        const double h = 1e-5;
        for (int i = 0; i < 50; ++i) {
            const double a = uniform_at(11, i, 0, 0.0, 5.0);
            const double t = uniform_at(11, i, 1, 0.1, 8.0);
            const double fd = (marcum_q1(a, t + h) - marcum_q1(a, t - h)) / (2.0 * h);
            const double shift = a - t;
            const double exact = -t * std::exp(-0.5 * shift * shift) * bessel_i0_scaled(a * t);
            d_err = std::max(d_err, std::abs(fd - exact));
        }
        r.passed = id_err <= 1e-9 && d_err <= 1e-6;
        r.detail = fmt("Q1(a,a) identity err %.2e (<=1e-9); derivative err %.2e (<=1e-6)", id_err, d_err);
    });
}

CheckResult criterion_fig1(const Options& opt)
{
    return timed("2", "Fig.-1 semi-linear fits", 5.0, opt, [&](CheckResult& r) {
        bool ok = true;
        std::string detail;
        for (double alpha : {0.5, 2.0, 3.0}) {
            for (FitVariant v : kAllVariants) {
                const SemiLinearFit fit = maybe_faulty(make_fit(v, alpha), opt);
                const Fig1Stats s = fig1_stats(fit, 2000);
                const double bound = fig1_bound(alpha, v);
                const bool anchor_ok = !anchored_on_curve(v) || s.anchor_error <= 1e-9;
                const bool case_ok = anchor_ok && s.monotone && s.mid_error <= bound;
                ok = ok && case_ok;
                detail += fmt("%s a=%g %s: anchor %.1e mid %.4f/%.3f%s; ", case_ok ? "ok" : "FAIL", alpha,
                              std::string(to_string(v)).c_str(), s.anchor_error, s.mid_error, bound,
                              s.monotone ? "" : " non-monotone");
            }
        }
        r.passed = ok;
        r.detail = detail;
    });
}

CheckResult criterion_fig2(const Options& opt)
{
    return timed("3", "Fig.-2 integral G (Lemma 2)", 10.0, opt, [&](CheckResult& r) {
        const std::pair<double, double> mn[] = {{4, 4}, {3, 3}, {2, 2}, {0, 1}, {1, 1}};
        double worst = 0.0;
        std::string at;
        int fails = 0;
        int total = 0;
        for (auto [m, n] : mn) {
            for (int k = 0; k <= 8; ++k) {
                const GIntegralParams p{2.0, 0.5 * k, m, n};
                const double e = rel_err(g_approx(p), g_exact(p));
                ++total;
                if (e > 0.05) ++fails;
                if (e > worst) {
                    worst = e;
                    at = fmt("(m,n)=(%g,%g) rho=%g", m, n, p.rho);
                }
            }
        }
        r.passed = fails == 0;
        r.detail = fmt("worst relative error %.2f%% at %s; %d of %d points above 5%%", 100 * worst, at.c_str(),
                       fails, total);
    });
}

CheckResult criterion_fig3(const Options& opt)
{
    return timed("4", "Fig.-3 integral T (Lemma 3) and m = 0 form", 30.0, opt, [&](CheckResult& r) {
        double worst_t = 0.0;
        double worst_t0 = 0.0;
        std::string at_t;
        std::string at_t0;
        int fails = 0;
        int total = 0;
        for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
            const SemiLinearFit fit = fit_lemma1(alpha);
            for (double a : {1.0, 2.0}) {
                for (double m : {0.5, 1.0, 2.0}) {
                    const TIntegralParams p{alpha, m, a, 0.0, std::numeric_limits<double>::infinity()};
                    const double e = rel_err(t_approx(p, fit), t_exact(p));
                    ++total;
                    if (e > 0.05) ++fails;
                    if (e > worst_t) {
                        worst_t = e;
                        at_t = fmt("alpha=%g m=%g a=%g", alpha, m, a);
                    }
                }
                const TIntegralParams p0{alpha, 0.0, a, 0.0, fit.c2};
                const double e0 = rel_err(t0_approx(p0, fit), t_exact(p0));
                ++total;
                if (e0 > 0.05) ++fails;
                if (e0 > worst_t0) {
                    worst_t0 = e0;
                    at_t0 = fmt("alpha=%g a=%g", alpha, a);
                }
            }
        }
        r.passed = fails == 0;
        r.detail = fmt("T worst %.2f%% at %s; T0 on [0,c2] worst %.2f%% at %s; %d of %d cases above 5%%",
                       100 * worst_t, at_t.c_str(), 100 * worst_t0, at_t0.c_str(), fails, total);
    });
}

CheckResult criterion_lemma4(const Options& opt)
{
    return timed("5", "Lemma-4 rate optimality", 60.0, opt, [&](CheckResult& r) {
        constexpr int kTriples = 500;
        struct Stats {
            double worst = 1.0;
            int below = 0;
            int fallbacks = 0;
        };
        std::map<FitVariant, Stats> stats{{FitVariant::Corollary2, {}}, {FitVariant::Lemma1, {}}};
        for (int i = 0; i < kTriples; ++i) {
            const double g_hat = uniform_at(5, i, 0, 0.1, 4.0);
            const double sigma = uniform_at(5, i, 1, 0.05, 0.6);
            const double power = std::pow(10.0, uniform_at(5, i, 2, 0.0, 2.5));
            const RateDecision exact = optimal_rate_exact(g_hat, sigma, power);
            const double best = instantaneous_throughput(exact.rate, g_hat, sigma, power);
            for (auto& [variant, s] : stats) {
                const RateDecision d = optimal_rate_lemma4(g_hat, sigma, power, variant);
                const double ratio = instantaneous_throughput(d.rate, g_hat, sigma, power) / best;
                s.worst = std::min(s.worst, ratio);
                if (ratio < 0.95) ++s.below;
                if (d.fallback) ++s.fallbacks;
            }
        }
        const Stats& main = stats[FitVariant::Corollary2];
        const Stats& alt = stats[FitVariant::Lemma1];
        const double fb = static_cast<double>(main.fallbacks) / kTriples;
        r.passed = main.below == 0 && fb < 0.10;
        r.detail = fmt("corollary2 fit: worst ratio %.3f, %d/%d below 0.95, fallback %.1f%%; "
                       "lemma1 fit: worst ratio %.3f, %d/%d below 0.95, fallback %.1f%%",
                       main.worst, main.below, kTriples, 100 * fb, alt.worst, alt.below, kTriples,
                       100.0 * alt.fallbacks / kTriples);
    });
}

CheckResult criterion_fig5(const Options& opt)
{
    return timed("6", "Fig.-5 policy ordering", 300.0, opt, [&](CheckResult& r) {
        SweepSpec spec = preset("fig5").front();
        spec.policies = {Policy::Genie, Policy::Lemma4Approx, Policy::NoAdaptation};
        spec.realizations = 100000;
        RunOptions ro;
        ro.workers = opt.workers;
        const SweepResult res = run_sweep(spec, ro);

        std::map<std::pair<double, Policy>, SweepRow> cell;
        for (const auto& row : res.rows) cell[{row.value, row.policy}] = row;

        bool ok = true;
        std::string issues;
        double worst_closed = 0.0;
        for (double snr : spec.values) {
            const auto& g = cell[{snr, Policy::Genie}];
            const auto& a = cell[{snr, Policy::Lemma4Approx}];
            const auto& n = cell[{snr, Policy::NoAdaptation}];
            worst_closed = std::max(worst_closed, std::abs(n.analytic - fixed_rate_max(std::pow(10.0, snr / 10.0))));
            if (snr < 10.0) continue;
            if (!(g.mean_throughput >= a.mean_throughput && a.mean_throughput >= n.mean_throughput)) {
                ok = false;
                issues += fmt(" order broken at %g dB;", snr);
            }
            if (snr >= 20.0) {
                const bool sep = g.mean_throughput - a.mean_throughput > g.ci95 + a.ci95 &&
                                 a.mean_throughput - n.mean_throughput > a.ci95 + n.ci95;
                if (!sep) {
                    ok = false;
                    issues += fmt(" CIs overlap at %g dB;", snr);
                }
            }
        }
        ok = ok && worst_closed <= 1e-9;
        const auto& g30 = cell[{30.0, Policy::Genie}];
        const auto& a30 = cell[{30.0, Policy::Lemma4Approx}];
        const auto& n30 = cell[{30.0, Policy::NoAdaptation}];
        r.passed = ok;
        r.detail = fmt("at 30 dB genie %.3f, lemma4 %.3f, no-adapt %.3f npcu; closed form vs search %.1e;%s",
                       g30.mean_throughput, a30.mean_throughput, n30.mean_throughput, worst_closed,
                       issues.empty() ? " ordering holds" : issues.c_str());
    });
}

CheckResult criterion_speed_sweeps(const Options& opt)
{
    return timed("7", "Fig.-7/8 optimal speed", 600.0, opt, [&](CheckResult& r) {
        RunOptions ro;
        ro.workers = opt.workers;
        auto sweep = [&](double delta_ms, double kappa, double lo, double hi) {
            SweepSpec s;
            s.scenario = scenario_from_units(2.68, 1.5, 114.0, delta_ms, 10.0, kappa);
            s.variable = SweepVariable::SpeedKmh;
            s.values = linear_range(lo, 1.0, hi);
            s.realizations = 100000;
            s.policies = {Policy::ExactSearch};
            const SweepResult res = run_sweep(s, ro);
            return argmax_value(res, Policy::ExactSearch);
        };
        const double v_ref = 1.5 * kSpeedOfLight / 2.68e9 / 5e-3 * 3.6;
        const double v5 = sweep(5.0, 1.0, 100.0, 142.0);
        const double v5k = sweep(5.0, 0.9, 100.0, 142.0);
        const double v535 = sweep(5.35, 1.0, 92.0, 134.0);
        const double v468 = sweep(4.68, 1.0, 108.0, 150.0);
        const bool near = std::abs(v5 - v_ref) <= 3.0;
        const bool ordered = v535 < v468;
        const bool kappa_ok = std::abs(v5k - v5) < 3.0;
        const bool interior = v5 > 100.0 && v5 < 142.0 && v535 > 92.0 && v535 < 134.0 && v468 > 108.0 && v468 < 150.0;
        r.passed = near && ordered && kappa_ok && interior;
        r.detail = fmt("optimum %.0f km/h at 5 ms (d_a/delta = %.2f), %.0f with kappa 0.9, %.0f at 5.35 ms, "
                       "%.0f at 4.68 ms",
                       v5, v_ref, v5k, v535, v468);
    });
}

CheckResult criterion_distribution(const Options& opt)
{
    return timed("8", "conditional gain distribution", 30.0, opt, [&](CheckResult& r) {
        constexpr int kSamples = 100000;
        const std::complex<double> h_hat(0.8, 0.6);
        double worst_ks = 0.0;
        for (auto [sigma, kappa] : {std::pair{0.5, 1.0}, std::pair{0.3, 0.9}, std::pair{0.1, 1.0}}) {
            std::vector<double> g(kSamples);
            for (int i = 0; i < kSamples; ++i) {
                ChannelNoise n = draw_noise(2024, static_cast<std::uint64_t>(i));
                n.h_hat = h_hat;
                g[static_cast<std::size_t>(i)] = compose_channel(n, sigma, kappa).g;
            }
            const EffectiveGain eff = apply_estimation_error((1.0 - sigma * sigma) * std::norm(h_hat), sigma, kappa);
            worst_ks = std::max(worst_ks, ks_statistic(std::move(g), [&](double x) {
                                    return conditional_gain_cdf(x, eff.g_hat, eff.sigma);
                                }));
        }
        double worst_norm = 0.0;
        for (auto [g_hat, sigma] : {std::pair{1.0, 0.5}, std::pair{0.2, 0.1}, std::pair{3.0, 0.9}}) {
            const double alpha = std::sqrt(2.0 * g_hat) / sigma;
            const double upper = 0.5 * sigma * sigma * (alpha + 40.0) * (alpha + 40.0);
            ToleranceConfig tol;
            tol.abs_tol = 1e-12;
            tol.rel_tol = 1e-12;
            const auto q = integrate([&](double x) { return conditional_gain_pdf(x, g_hat, sigma); }, 0.0, upper, tol,
                                     {g_hat});
            worst_norm = std::max(worst_norm, std::abs(q.value - 1.0));
        }
        r.passed = worst_ks < 0.01 && worst_norm <= 1e-8;
        r.detail = fmt("worst KS %.4f (<0.01) over 3 cases at 1e5 samples; pdf normalization err %.1e (<=1e-8)",
                       worst_ks, worst_norm);
    });
}

CheckResult criterion_determinism(const Options& opt)
{
    return timed("9", "determinism across worker counts", 0.0, opt, [&](CheckResult& r) {
        SweepSpec spec = preset("fig5").front();
        spec.values = {0.0, 10.0, 20.0, 30.0};
        spec.realizations = 6000;
        RunOptions one;
        one.workers = 1;
        RunOptions eight;
        eight.workers = 8;
        const SweepResult a = run_sweep(spec, one);
        const SweepResult b = run_sweep(spec, eight);
        const SweepResult c = run_sweep(spec, eight);
        bool same = a.rows.size() == b.rows.size() && b.rows.size() == c.rows.size();
        for (std::size_t i = 0; same && i < a.rows.size(); ++i) {
            const double x[] = {a.rows[i].mean_throughput, a.rows[i].outage, a.rows[i].ci95,
                                a.rows[i].expected_throughput};
            const double y[] = {b.rows[i].mean_throughput, b.rows[i].outage, b.rows[i].ci95,
                                b.rows[i].expected_throughput};
            const double z[] = {c.rows[i].mean_throughput, c.rows[i].outage, c.rows[i].ci95,
                                c.rows[i].expected_throughput};
            same = std::memcmp(x, y, sizeof x) == 0 && std::memcmp(y, z, sizeof y) == 0;
        }
        same = same && sweep_csv(a) == sweep_csv(b) && sweep_csv(b) == sweep_csv(c);
        r.passed = same;
        r.detail = same ? fmt("%zu rows bit-identical for 1 and 8 workers", a.rows.size())
                        : "outputs differ between worker counts";
    });
}

std::vector<CheckResult> run_acceptance(const Options& opt)
{
    return {criterion_oracle_fidelity(opt), criterion_fig1(opt),    criterion_fig2(opt),
            criterion_fig3(opt),            criterion_lemma4(opt),  criterion_fig5(opt),
            criterion_speed_sweeps(opt),    criterion_distribution(opt), criterion_determinism(opt)};
}

std::vector<CheckResult> run_selftest(const std::string& level, const Options& opt)
{
    if (level == "full") {
        std::vector<CheckResult> out = {monotonicity_check(opt), antiderivative_check(opt)};
        for (auto& c : run_acceptance(opt)) out.push_back(std::move(c));
        return out;
    }
    if (level != "fast") throw DomainError("selftest level must be 'fast' or 'full'");

    std::vector<CheckResult> out;
    out.push_back(criterion_oracle_fidelity(opt));
    out.push_back(monotonicity_check(opt));
    out.push_back(timed("anchor_exactness", "fits pass through the exact CDF at beta0", 0.0, opt,
                        [&](CheckResult& r) {
                            double worst = 0.0;
                            for (double alpha : {0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0}) {
                                const SemiLinearFit f = fit_lemma1(alpha);
                                worst = std::max(worst,
                                                 std::abs(approx_cdf(f, f.beta0) - marcum_cdf(alpha, f.beta0)));
                            }
                            r.passed = worst <= 1e-9;
                            r.detail = fmt("worst anchor error %.1e", worst);
                        }));
    out.push_back(criterion_fig1(opt));
    out.push_back(antiderivative_check(opt));
    out.push_back(timed("closed_integral_spot", "Lemma 2/3 spot values against quadrature", 0.0, opt,
                        [&](CheckResult& r) {
                            const double eg = rel_err(g_approx({2.0, 2.0, 4.0, 4.0}), g_exact({2.0, 2.0, 4.0, 4.0}));
                            const TIntegralParams tp{2.0, 1.0, 1.0, 0.0, std::numeric_limits<double>::infinity()};
                            const double et = rel_err(t_approx(tp), t_exact(tp));
                            r.passed = eg <= 0.05 && et <= 0.05;
                            r.detail = fmt("G(2; rho=2, m=n=4) err %.2f%%, T(2,1,1,0,inf) err %.2f%%", 100 * eg,
                                           100 * et);
                        }));
    out.push_back(timed("distribution_ks", "sampled gains follow the conditional CDF", 0.0, opt,
                        [&](CheckResult& r) {
                            constexpr int kSamples = 20000;
                            const std::complex<double> h_hat(0.8, 0.6);
                            std::vector<double> g(kSamples);
                            for (int i = 0; i < kSamples; ++i) {
                                ChannelNoise n = draw_noise(99, static_cast<std::uint64_t>(i));
                                n.h_hat = h_hat;
                                g[static_cast<std::size_t>(i)] = compose_channel(n, 0.5, 1.0).g;
                            }
                            const double ks = ks_statistic(std::move(g), [&](double x) {
                                return conditional_gain_cdf(x, 0.75, 0.5);
                            });
                            r.passed = ks < 0.02;
                            r.detail = fmt("KS %.4f at 2e4 samples (<0.02)", ks);
                        }));
    out.push_back(timed("determinism", "sweep independent of worker count", 0.0, opt, [&](CheckResult& r) {
        SweepSpec spec = preset("fig5").front();
        spec.values = {10.0, 20.0};
        spec.realizations = 3000;
        RunOptions one;
        one.workers = 1;
        RunOptions four;
        four.workers = 4;
        const bool same = sweep_csv(run_sweep(spec, one)) == sweep_csv(run_sweep(spec, four));
        r.passed = same;
        r.detail = same ? "identical CSV for 1 and 4 workers" : "CSV differs between worker counts";
    }));
    return out;
}

nlohmann::json report_json(const std::string& level, const std::vector<CheckResult>& results)
{
    nlohmann::json checks = nlohmann::json::array();
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& c : results) {
        checks.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail},
                          {"seconds", c.seconds}});
        if (!c.passed) failures.push_back(c.id);
    }
    return {{"level", level}, {"passed", failures.empty()}, {"failures", failures}, {"checks", checks}};
}

} // namespace semiq::validation
