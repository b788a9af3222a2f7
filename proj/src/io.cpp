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

#include "semiq/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace semiq {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

[[noreturn]] void bad_value(std::string_view what, std::string_view text)
{
    throw DomainError(std::string(what) + ": cannot parse '" + std::string(text) + "'");
}

std::string quote_field(const std::string& f)
{
    if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
    std::string out = "\"";
    for (char c : f) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string format_double(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, std::string_view what)
{
    const std::string_view t = trim(text);
    if (t.empty()) bad_value(what, text);
    double v = 0.0;
    const char* first = t.data();
    if (*first == '+') ++first;
    const auto res = std::from_chars(first, t.data() + t.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) bad_value(what, text);
    return v;
}

long long parse_int(std::string_view text, std::string_view what)
{
    const std::string_view t = trim(text);
    long long v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size()) bad_value(what, text);
    return v;
}

std::vector<double> linear_range(double a, double step, double b)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(step)) throw DomainError("range: values must be finite");
    if (step <= 0.0) throw DomainError("range: step must be > 0");
    if (b < a) throw DomainError("range: end must be >= start");
    const auto count = static_cast<long long>(std::floor((b - a) / step + 1e-9)) + 1;
    if (count > 10000000) throw DomainError("range: too many points");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) {
        const double v = a + static_cast<double>(i) * step;
        out.push_back(std::round(v * 1e9) / 1e9);
    }
    return out;
}

std::vector<double> parse_range(std::string_view text, std::string_view what)
{
    const std::string_view t = trim(text);
    if (t.find(',') != std::string_view::npos) {
        std::vector<double> out;
        for (auto part : split(t, ',')) out.push_back(parse_double(part, what));
        return out;
    }
    const auto parts = split(t, ':');
    if (parts.size() == 1) return {parse_double(parts[0], what)};
    if (parts.size() == 2) {
        const double a = parse_double(parts[0], what);
        const double b = parse_double(parts[1], what);
        if (b < a) throw DomainError(std::string(what) + ": end must be >= start");
        if (b == a) return {a};
        std::vector<double> out;
        for (int i = 0; i <= 100; ++i) out.push_back(a + (b - a) * i / 100.0);
        return out;
    }
    if (parts.size() == 3) {
        const double a = parse_double(parts[0], what);
        const double step = parse_double(parts[1], what);
        const double b = parse_double(parts[2], what);
        try {
            return linear_range(a, step, b);
        } catch (const DomainError& e) {
            throw DomainError(std::string(what) + ": " + e.what());
        }
    }
    bad_value(what, text);
}

std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text)
{
    std::vector<std::pair<std::string, std::string>> out;
    int line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        auto line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw DomainError("line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw DomainError("line " + std::to_string(line_no) + ": empty key");
        for (const auto& kv : out) {
            if (kv.first == key) throw DomainError("duplicate key '" + key + "'");
        }
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

std::string write_csv(const Table& table)
{
    std::string out;
    for (const auto& row : table) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out += ',';
            out += quote_field(row[i]);
        }
        out += '\n';
    }
    return out;
}

Table read_csv(std::string_view text)
{
    Table table;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_open = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        row_open = true;
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            row.push_back(std::move(field));
            field.clear();
            table.push_back(std::move(row));
            row.clear();
            row_open = false;
        } else {
            field += c;
        }
    }
    if (in_quotes) throw DomainError("csv: unterminated quoted field");
    if (row_open) {
        row.push_back(std::move(field));
        table.push_back(std::move(row));
    }
    return table;
}

PaScenario ScenarioUnits::to_scenario() const
{
    return scenario_from_units(fc_ghz, da_wavelengths, v_kmh, delta_ms, snr_db, kappa);
}

bool is_scenario_key(std::string_view key)
{
    return key == "fc_ghz" || key == "da_wavelengths" || key == "v_kmh" || key == "delta_ms" || key == "snr_db" ||
           key == "kappa";
}

void set_scenario_key(ScenarioUnits& s, std::string_view key, std::string_view value)
{
    const double v = parse_double(value, key);
    if (key == "fc_ghz") s.fc_ghz = v;
    else if (key == "da_wavelengths") s.da_wavelengths = v;
    else if (key == "v_kmh") s.v_kmh = v;
    else if (key == "delta_ms") s.delta_ms = v;
    else if (key == "snr_db") s.snr_db = v;
    else if (key == "kappa") s.kappa = v;
    else throw DomainError("unknown scenario key '" + std::string(key) + "'");
}

SweepSpec parse_sweep_spec(std::string_view text)
{
    SweepSpec spec;
    ScenarioUnits units;
    bool have_variable = false;
    bool have_values = false;
    for (const auto& [key, value] : parse_key_values(text)) {
        if (is_scenario_key(key)) {
            set_scenario_key(units, key, value);
        } else if (key == "variable") {
            spec.variable = parse_variable(value);
            have_variable = true;
        } else if (key == "values") {
            spec.values = parse_range(value, "values");
            have_values = true;
        } else if (key == "realizations") {
            spec.realizations = parse_int(value, "realizations");
        } else if (key == "seed") {
            const long long seed = parse_int(value, "seed");
            if (seed < 0) throw DomainError("seed must be >= 0");
            spec.seed = static_cast<std::uint64_t>(seed);
        } else if (key == "policies") {
            spec.policies.clear();
            for (auto p : split(value, ',')) spec.policies.push_back(parse_policy(trim(p)));
        } else if (key == "lemma4_variant") {
            spec.lemma4_variant = parse_variant(value);
        } else if (key == "label") {
            spec.label = value;
        } else {
            throw DomainError("unknown key '" + key + "'");
        }
    }
    if (!have_variable) throw DomainError("missing key 'variable'");
    if (!have_values) throw DomainError("missing key 'values'");
    spec.scenario = units.to_scenario();
    spec.validate();
    return spec;
}

std::string sweep_csv(const SweepResult& r)
{
    Table t;
    t.push_back({"variable", "value", "policy", "mean_throughput_npcu", "outage", "ci95", "n"});
    const std::string var(to_string(r.spec.variable));
    for (const auto& row : r.rows) {
        t.push_back({var, format_double(row.value), std::string(to_string(row.policy)),
                     format_double(row.mean_throughput), format_double(row.outage), format_double(row.ci95),
                     std::to_string(row.n)});
    }
    return write_csv(t);
}

nlohmann::json sweep_json(const SweepResult& r)
{
    using nlohmann::json;
    const SweepSpec& s = r.spec;
    json policies = json::array();
    for (Policy p : s.policies) policies.push_back(std::string(to_string(p)));
    json spec = {
        {"scenario",
         {{"carrier_freq_hz", s.scenario.carrier_freq},
          {"antenna_sep_wavelengths", s.scenario.antenna_sep_wavelengths},
          {"speed_mps", s.scenario.speed},
          {"delay_s", s.scenario.delay},
          {"power_linear", s.scenario.power},
          {"kappa", s.scenario.kappa}}},
        {"variable", std::string(to_string(s.variable))},
        {"values", s.values},
        {"realizations", s.realizations},
        {"seed", s.seed},
        {"policies", policies},
        {"lemma4_variant", std::string(to_string(s.lemma4_variant))},
        {"label", s.label},
    };
    json rows = json::array();
    for (const auto& row : r.rows) {
        json j = {
            {"value", row.value},
            {"policy", std::string(to_string(row.policy))},
            {"mean_throughput_npcu", row.mean_throughput},
            {"outage", row.outage},
            {"ci95", row.ci95},
            {"n", row.n},
            {"expected_throughput_npcu", row.expected_throughput},
            {"fallbacks", row.fallbacks},
        };
        // NaN has no JSON form; policies without a closed form get null.
        j["analytic_npcu"] = std::isnan(row.analytic) ? json(nullptr) : json(row.analytic);
        rows.push_back(std::move(j));
    }
    return {{"spec", spec}, {"rows", rows}};
}

void write_file_atomic(const std::string& path, std::string_view content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("write to '" + tmp.string() + "' failed");
        }
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace semiq
