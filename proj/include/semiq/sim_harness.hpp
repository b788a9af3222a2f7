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
#include "semiq/rate_adapt.hpp"
#include "semiq/semilinear.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace semiq {

enum class SweepVariable { SnrDb, Kappa, DelayMs, SpeedKmh };

std::string_view to_string(SweepVariable v);
SweepVariable parse_variable(std::string_view name);

struct SweepSpec {
    PaScenario scenario;
    SweepVariable variable = SweepVariable::SnrDb;
    std::vector<double> values;
    std::int64_t realizations = 100000;
    std::uint64_t seed = 1;
    std::vector<Policy> policies{Policy::Lemma4Approx};
    FitVariant lemma4_variant = FitVariant::Corollary2;
    std::string label; // curve name used for multi-curve presets

    void validate() const;
};

struct SweepRow {
    double value = 0.0;
    Policy policy = Policy::ExactSearch;
    double mean_throughput = 0.0;   // realized R 1{decoded}, npcu
    double outage = 0.0;            // empirical decoding-failure rate
    double ci95 = 0.0;              // 1.96 std / sqrt(n)
    std::int64_t n = 0;
    double expected_throughput = 0.0; // mean of R (1 - P(outage | g_hat))
    double analytic = 0.0;          // closed form where one exists, else NaN
    std::int64_t fallbacks = 0;     // Lemma4 draws that used the search
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;
};

struct RunOptions {
    int workers = 0;                 // 0: hardware concurrency
    std::int64_t shard_size = 2048;  // draws per task; fixes the reduction tree
    ToleranceConfig tol{};
};

/// Scenario with the sweep variable set to `value` (given in the sweep's units).
PaScenario apply_variable(const PaScenario& base, SweepVariable variable, double value);

/// Runs every (value, policy) cell. Draw i of every point uses the same
/// channel noise, so curves are smooth in the swept variable and policies
/// see common random numbers. Output is independent of the worker count.
SweepResult run_sweep(const SweepSpec& spec, const RunOptions& options = {});

struct McEstimate {
    double mean = 0.0;
    double ci95 = 0.0;
    double outage = 0.0;
    double expected = 0.0;
    std::int64_t n = 0;
    std::int64_t fallbacks = 0;
};

McEstimate monte_carlo_expected_throughput(const PaScenario& scenario, Policy policy, std::int64_t realizations,
                                           std::uint64_t seed, const RunOptions& options = {});

/// Named figure presets: fig5, fig6, fig7, fig8. Multi-curve figures
/// return one spec per curve, each with a distinct label.
std::vector<SweepSpec> preset(std::string_view name);

/// Scenario from the flat key set fc_ghz, da_wavelengths, v_kmh, delta_ms,
/// snr_db, kappa (GHz, km/h, ms, dB).
PaScenario scenario_from_units(double fc_ghz, double da_wavelengths, double v_kmh, double delta_ms, double snr_db,
                               double kappa);

} // namespace semiq
