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

#include "semiq/cli.hpp"

#include "semiq/closed_integrals.hpp"
#include "semiq/io.hpp"
#include "semiq/pa_model.hpp"
#include "semiq/rate_adapt.hpp"
#include "semiq/semilinear.hpp"
#include "semiq/sim_harness.hpp"
#include "semiq/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace semiq {

namespace {

using Record = nlohmann::ordered_json;

std::string cell(const nlohmann::ordered_json& v)
{
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_double(v.get<double>());
    return v.dump();
}

std::string to_csv(const std::vector<Record>& rows)
{
    Table t;
    if (rows.empty()) return "";
    std::vector<std::string> header;
    for (const auto& [k, v] : rows.front().items()) header.push_back(k);
    t.push_back(header);
    for (const auto& r : rows) {
        std::vector<std::string> line;
        for (const auto& k : header) line.push_back(r.contains(k) ? cell(r.at(k)) : "");
        t.push_back(std::move(line));
    }
    return write_csv(t);
}

std::string to_json(const std::vector<Record>& rows)
{
    Record arr = Record::array();
    for (const auto& r : rows) {
        Record clean = r;
        for (auto& [k, v] : clean.items()) {
            if (v.is_number_float() && !std::isfinite(v.get<double>())) v = nullptr;
        }
        arr.push_back(clean);
    }
    return arr.dump(2) + "\n";
}

void emit(const std::string& content, const std::string& path, std::ostream& out)
{
    if (path.empty()) out << content;
    else write_file_atomic(path, content);
}

std::string render(const std::vector<Record>& rows, const std::string& format)
{
    return format == "json" ? to_json(rows) : to_csv(rows);
}

// "out.csv" + "v120" -> "out_v120.csv"
std::string suffixed(const std::string& path, const std::string& label)
{
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "_" + label;
    return path.substr(0, dot) + "_" + label + path.substr(dot);
}

// CLI11 reads "--beta -1:1" as two options. Glue option values that look
// like negative numbers or ranges onto their flag.
std::vector<std::string> glue_negative_values(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a.rfind("--", 0) == 0 && a.find('=') == std::string::npos && i + 1 < argc) {
            const std::string next = argv[i + 1];
            if (next.size() > 1 && next[0] == '-' && (std::isdigit(static_cast<unsigned char>(next[1])) || next[1] == '.')) {
                a += "=" + next;
                ++i;
            }
        }
        args.push_back(std::move(a));
    }
    return args;
}

struct ApproxArgs {
    double alpha = 0.0;
    std::string beta;
    std::string variant = "lemma1";
};

std::vector<Record> cmd_approx(const ApproxArgs& a)
{
    const FitVariant variant = parse_variant(a.variant);
    SemiLinearFit fit;
    try {
        fit = make_fit(variant, a.alpha);
    } catch (const DomainError& e) {
        throw DomainError(std::string("alpha: ") + e.what());
    }
    const std::vector<double> grid =
        a.beta.empty() ? linear_range(0.0, 0.05, std::ceil((fit.c2 + 1.0) * 20.0) / 20.0) : parse_range(a.beta, "beta");
    for (double b : grid) {
        if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("beta: values must be finite and >= 0");
    }
    std::vector<Record> rows;
    for (double b : grid) {
        const double exact = marcum_cdf(a.alpha, b);
        const double z = approx_cdf(fit, b);
        rows.push_back({{"beta", b}, {"exact_cdf", exact}, {"approx", z}, {"abs_error", std::abs(z - exact)}});
    }
    return rows;
}

struct IntegrateArgs {
    std::string family;
    std::string preset;
    std::optional<double> alpha, rho, m, n, a, theta1, theta2;
    std::string variant = "lemma1";
};

Record g_record(const GIntegralParams& p)
{
    const auto ex = g_exact_detailed(p);
    const double ap = g_approx(p);
    return {{"family", "G"},       {"alpha", p.alpha},     {"rho", p.rho},         {"m", p.m},
            {"n", p.n},            {"a", nullptr},         {"theta1", nullptr},    {"theta2", nullptr},
            {"closed_form", ap},   {"oracle", ex.value},   {"oracle_error", ex.error + ex.tail_bound},
            {"rel_error", std::abs(ap - ex.value) / std::abs(ex.value)}};
}

Record t_record(const TIntegralParams& p, const SemiLinearFit& fit)
{
    const bool zero = p.m == 0.0;
    const auto ex = t_exact_detailed(p);
    const double ap = zero ? t0_approx(p, fit) : t_approx(p, fit);
    return {{"family", zero ? "T0" : "T"}, {"alpha", p.alpha},      {"rho", nullptr},
            {"m", p.m},                    {"n", nullptr},          {"a", p.a},
            {"theta1", p.theta1},          {"theta2", p.theta2},    {"closed_form", ap},
            {"oracle", ex.value},          {"oracle_error", ex.error + ex.tail_bound},
            {"rel_error", std::abs(ap - ex.value) / std::abs(ex.value)}};
}

std::vector<Record> cmd_integrate(const IntegrateArgs& a)
{
    if (!a.preset.empty()) {
        if (!a.family.empty() || a.alpha || a.rho || a.m || a.n || a.a || a.theta1 || a.theta2) {
            throw DomainError("preset: cannot be combined with family parameters");
        }
        std::vector<Record> rows;
        if (a.preset == "fig2") {
            for (auto [m, n] : {std::pair{4.0, 4.0}, {3.0, 3.0}, {2.0, 2.0}, {0.0, 1.0}, {1.0, 1.0}}) {
                for (int k = 0; k <= 8; ++k) rows.push_back(g_record({2.0, 0.5 * k, m, n}));
            }
        } else if (a.preset == "fig3") {
            const double inf = std::numeric_limits<double>::infinity();
            for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
                const SemiLinearFit fit = fit_lemma1(alpha);
                for (double av : {1.0, 2.0}) {
                    for (double m : {0.5, 1.0, 2.0}) rows.push_back(t_record({alpha, m, av, 0.0, inf}, fit));
                    rows.push_back(t_record({alpha, 0.0, av, 0.0, fit.c2}, fit));
                }
            }
        } else {
            throw DomainError("preset: expected 'fig2' or 'fig3'");
        }
        return rows;
    }

    auto need = [](const std::optional<double>& v, const char* name) {
        if (!v) throw DomainError(std::string(name) + ": required for this family");
        return *v;
    };
    auto forbid = [](const std::optional<double>& v, const char* name) {
        if (v) throw DomainError(std::string(name) + ": not a parameter of this family");
    };
    if (a.family == "G") {
        forbid(a.a, "a");
        forbid(a.theta1, "theta1");
        forbid(a.theta2, "theta2");
        GIntegralParams p{need(a.alpha, "alpha"), need(a.rho, "rho"), need(a.m, "m"), need(a.n, "n")};
        p.validate();
        return {g_record(p)};
    }
    if (a.family == "T" || a.family == "T0") {
        forbid(a.rho, "rho");
        forbid(a.n, "n");
        TIntegralParams p;
        p.alpha = need(a.alpha, "alpha");
        p.a = need(a.a, "a");
        p.theta1 = a.theta1.value_or(0.0);
        p.theta2 = a.theta2.value_or(std::numeric_limits<double>::infinity());
        if (a.family == "T0") {
            if (a.m && *a.m != 0.0) throw DomainError("m: the T0 family has m = 0");
            p.m = 0.0;
            if (!std::isfinite(p.theta2)) throw DomainError("theta2: T0 needs a finite upper limit");
        } else {
            p.m = need(a.m, "m");
            if (p.m == 0.0) throw DispatchError("m: m = 0 belongs to the T0 family");
        }
        p.validate();
        return {t_record(p, make_fit(parse_variant(a.variant), p.alpha))};
    }
    throw DomainError("family: expected G, T or T0");
}

struct RateArgs {
    std::string scenario_file;
    std::map<std::string, double> keys; // flag overrides, file-key names
    std::optional<double> g_hat;
    std::optional<double> sigma;
    std::string variant = "corollary2";
};

std::vector<Record> cmd_rate(const RateArgs& a)
{
    ScenarioUnits units;
    if (!a.scenario_file.empty()) {
        for (const auto& [k, v] : parse_key_values(read_file(a.scenario_file))) {
            if (!is_scenario_key(k)) throw DomainError("scenario: unknown key '" + k + "'");
            set_scenario_key(units, k, v);
        }
    }
    for (const auto& [k, v] : a.keys) set_scenario_key(units, k, format_double(v));
    const PaScenario s = units.to_scenario();
    s.validate();

    const double g_hat = *a.g_hat;
    if (!(g_hat >= 0.0) || !std::isfinite(g_hat)) throw DomainError("g_hat: must be finite and >= 0");
    double sigma = 0.0;
    if (a.sigma) {
        sigma = *a.sigma;
        if (!(sigma >= 0.0 && sigma <= 1.0)) throw DomainError("sigma: must lie in [0, 1]");
    } else {
        sigma = correlation_state(s).sigma;
    }
    const EffectiveGain eff = apply_estimation_error(g_hat, sigma, s.kappa);
    const RateDecision l4 = optimal_rate_lemma4(eff.g_hat, eff.sigma, s.power, parse_variant(a.variant));
    const RateDecision ex = optimal_rate_exact(eff.g_hat, eff.sigma, s.power);
    return {{{"power", s.power},
             {"kappa", s.kappa},
             {"sigma", sigma},
             {"g_hat", g_hat},
             {"g_hat_eff", eff.g_hat},
             {"sigma_eff", eff.sigma},
             {"lemma4_rate", l4.rate},
             {"lemma4_closed_form", l4.closed_form_rate},
             {"lemma4_outage", l4.conditional_outage},
             {"lemma4_throughput", instantaneous_throughput(l4.rate, eff.g_hat, eff.sigma, s.power)},
             {"fallback", l4.fallback},
             {"exact_rate", ex.rate},
             {"exact_outage", ex.conditional_outage},
             {"exact_throughput", instantaneous_throughput(ex.rate, eff.g_hat, eff.sigma, s.power)},
             {"no_adaptation_rate", no_adaptation_rate(s.power)}}};
}

struct SweepArgs {
    std::string preset;
    std::string spec_file;
    std::string out;
    std::string format = "csv";
    std::optional<long long> realizations;
    std::optional<long long> seed;
    std::string policies;
    int workers = 0;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err)
{
    if (a.preset.empty() == a.spec_file.empty()) throw DomainError("sweep: give exactly one of --preset or --spec");
    std::vector<SweepSpec> specs = a.preset.empty() ? std::vector{parse_sweep_spec(read_file(a.spec_file))}
                                                    : preset(a.preset);
    for (auto& s : specs) {
        if (a.realizations) s.realizations = *a.realizations;
        if (a.seed) {
            if (*a.seed < 0) throw DomainError("seed: must be >= 0");
            s.seed = static_cast<std::uint64_t>(*a.seed);
        }
        if (!a.policies.empty()) {
            s.policies.clear();
            std::string rest = a.policies;
            for (std::size_t pos; (pos = rest.find(',')) != std::string::npos; rest.erase(0, pos + 1)) {
                s.policies.push_back(parse_policy(rest.substr(0, pos)));
            }
            s.policies.push_back(parse_policy(rest));
        }
        s.validate();
    }
    const bool multi = specs.size() > 1;
    if (multi && a.out.empty() && a.format == "csv") {
        throw DomainError("out: multi-curve presets need --out in csv format");
    }

    RunOptions ro;
    ro.workers = a.workers;
    std::vector<SweepResult> results;
    for (const auto& s : specs) {
        results.push_back(run_sweep(s, ro));
        err << "curve " << (s.label.empty() ? std::string("default") : s.label) << ": "
            << results.back().rows.size() << " rows\n";
    }

    // Everything computed; only now touch the filesystem.
    if (a.format == "json" && a.out.empty() && multi) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : results) arr.push_back(sweep_json(r));
        out << arr.dump(2) << "\n";
        return kExitOk;
    }
    for (const auto& r : results) {
        const std::string content = a.format == "json" ? sweep_json(r).dump(2) + "\n" : sweep_csv(r);
        emit(content, multi ? suffixed(a.out, r.spec.label) : a.out, out);
    }
    return kExitOk;
}

struct SelftestArgs {
    std::string level = "fast";
    std::string inject_fault;
    std::string report;
    int workers = 0;
};

int cmd_selftest(const SelftestArgs& a, std::ostream& out, std::ostream& err)
{
    if (!a.inject_fault.empty() && a.inject_fault != "slope-sign") {
        throw DomainError("inject-fault: only 'slope-sign' is available");
    }
    validation::Options opt;
    opt.workers = a.workers;
    opt.inject_fault = a.inject_fault;
    opt.on_result = [&err](const validation::CheckResult& r) {
        err << (r.passed ? "PASS " : "FAIL ") << r.id << " " << r.name << " (" << format_double(std::round(r.seconds * 100) / 100)
            << " s): " << r.detail << "\n";
    };
    const auto results = validation::run_selftest(a.level, opt);
    const auto report = validation::report_json(a.level, results);
    const std::string text = report.dump(2) + "\n";
    if (a.report.empty()) out << text;
    else write_file_atomic(a.report, text);
    return report.at("passed").get<bool>() ? kExitOk : kExitCheckFailed;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Semi-linear Marcum-Q approximations and predictor-antenna rate adaptation"};
    app.name("semiq");
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "csv";
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    ApproxArgs approx;
    auto* s_approx = app.add_subcommand("approx", "semi-linear fit against the exact CDF");
    s_approx->add_option("--alpha", approx.alpha, "non-centrality alpha >= 0")->required();
    s_approx->add_option("--beta", approx.beta, "grid a:step:b, a:b, list or value (default 0:0.05:c2+1)");
    s_approx->add_option("--variant", approx.variant, "lemma1, corollary1, corollary1-asymptotic, corollary2");
    add_output(s_approx);

    IntegrateArgs integ;
    auto* s_int = app.add_subcommand("integrate", "closed-form integrals against quadrature");
    s_int->add_option("--family", integ.family, "G, T or T0");
    s_int->add_option("--preset", integ.preset, "fig2 or fig3 grid");
    s_int->add_option("--alpha", integ.alpha);
    s_int->add_option("--rho", integ.rho, "G lower limit");
    s_int->add_option("--m", integ.m, "exponent");
    s_int->add_option("--n", integ.n, "G power");
    s_int->add_option("--a", integ.a, "T log scale");
    s_int->add_option("--theta1", integ.theta1, "T lower limit");
    s_int->add_option("--theta2", integ.theta2, "T upper limit (inf allowed for T)");
    s_int->add_option("--variant", integ.variant, "fit used by T and T0");
    add_output(s_int);

    RateArgs rate;
    std::map<std::string, double> rate_keys;
    auto* s_rate = app.add_subcommand("rate", "rate choice for one channel estimate");
    s_rate->add_option("--scenario", rate.scenario_file, "key = value scenario file");
    for (const char* key : {"fc_ghz", "da_wavelengths", "v_kmh", "delta_ms", "snr_db", "kappa"}) {
        std::string flag = std::string("--") + key;
        for (auto& c : flag) {
            if (c == '_') c = '-';
        }
        s_rate->add_option_function<double>(flag, [&rate_keys, key](double v) { rate_keys[key] = v; });
    }
    s_rate->add_option("--g-hat", rate.g_hat, "estimated gain (1 - sigma^2)|h_hat|^2")->required();
    s_rate->add_option("--sigma", rate.sigma, "override the scenario sigma");
    s_rate->add_option("--variant", rate.variant, "fit used by the closed form");
    add_output(s_rate);

    SweepArgs sweep;
    auto* s_sweep = app.add_subcommand("sweep", "Monte Carlo throughput sweep");
    s_sweep->add_option("--preset", sweep.preset, "fig5, fig6, fig7 or fig8");
    s_sweep->add_option("--spec", sweep.spec_file, "key = value sweep file");
    s_sweep->add_option("--realizations", sweep.realizations);
    s_sweep->add_option("--seed", sweep.seed);
    s_sweep->add_option("--policies", sweep.policies, "comma list: lemma4, exact, no_adaptation, genie");
    s_sweep->add_option("--workers", sweep.workers, "threads (0: all cores)");
    add_output(s_sweep);

    SelftestArgs self;
    auto* s_self = app.add_subcommand("selftest", "invariant and acceptance checks");
    s_self->add_option("level", self.level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    s_self->add_option("--inject-fault", self.inject_fault, "deliberately break a component (slope-sign)");
    s_self->add_option("--report", self.report, "write the JSON report here instead of stdout");
    s_self->add_option("--workers", self.workers);

    std::vector<std::string> args = glue_negative_values(argc, argv);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (s_approx->parsed()) {
            emit(render(cmd_approx(approx), format), out_path, out);
        } else if (s_int->parsed()) {
            emit(render(cmd_integrate(integ), format), out_path, out);
        } else if (s_rate->parsed()) {
            rate.keys = rate_keys;
            emit(render(cmd_rate(rate), format), out_path, out);
        } else if (s_sweep->parsed()) {
            sweep.out = out_path;
            sweep.format = format;
            return cmd_sweep(sweep, out, err);
        } else if (s_self->parsed()) {
            return cmd_selftest(self, out, err);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

} // namespace semiq
