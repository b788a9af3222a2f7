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

#include "semiq/pa_model.hpp"
#include "semiq/sim_harness.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semiq {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

/// Strict parse of the whole string; throws DomainError naming `what`.
double parse_double(std::string_view text, std::string_view what);
long long parse_int(std::string_view text, std::string_view what);

/// a, a + step, ..., up to b inclusive (with a small slack for rounding).
/// Values are snapped to 9 decimals so 0:0.05:1 yields 0.05, not 0.05000000000000001.
std::vector<double> linear_range(double a, double step, double b);

/// "a:step:b", "a:b" (101 evenly spaced points), a single number, or a
/// comma-separated list.
std::vector<double> parse_range(std::string_view text, std::string_view what);

/// Flat key-value text: one `key = value` per line, `#` starts a comment.
/// Duplicate keys are rejected.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text);

using Table = std::vector<std::vector<std::string>>;

/// RFC 4180: CRLF-free output with \n row ends; fields are quoted when
/// they contain a comma, quote, CR or LF.
std::string write_csv(const Table& table);
Table read_csv(std::string_view text);

/// Scenario keys fc_ghz, da_wavelengths, v_kmh, delta_ms, snr_db, kappa.
/// Missing keys keep the defaults in `base`; any other key is rejected
/// unless listed in `extra_keys`.
struct ScenarioUnits {
    double fc_ghz = 2.68;
    double da_wavelengths = 1.5;
    double v_kmh = 114.0;
    double delta_ms = 5.0;
    double snr_db = 10.0;
    double kappa = 1.0;

    PaScenario to_scenario() const;
};

bool is_scenario_key(std::string_view key);
void set_scenario_key(ScenarioUnits& s, std::string_view key, std::string_view value);

/// Sweep spec file: scenario keys plus variable, values, realizations, seed,
/// policies (comma list), lemma4_variant, label.
SweepSpec parse_sweep_spec(std::string_view text);

inline constexpr const char* kSweepCsvHeader = "variable,value,policy,mean_throughput_npcu,outage,ci95,n";

std::string sweep_csv(const SweepResult& r);
nlohmann::json sweep_json(const SweepResult& r);

/// Writes to a sibling temporary file and renames it into place, so a
/// failed run never leaves a partial file at `path`.
void write_file_atomic(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

} // namespace semiq
