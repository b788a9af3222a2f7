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

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace semiq::validation {

struct CheckResult {
    std::string id;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    int workers = 0;
    /// Deliberate defect for mutation smoke tests. Supported: "slope-sign".
    std::string inject_fault;
    /// Progress sink; receives each result as soon as it is known.
    std::function<void(const CheckResult&)> on_result;
};

/// The numbered acceptance criteria, each with its tolerance and time budget.
std::vector<CheckResult> run_acceptance(const Options& opt = {});

/// Individual criteria, exposed so tests can run a subset.
CheckResult criterion_oracle_fidelity(const Options& opt);
CheckResult criterion_fig1(const Options& opt);
CheckResult criterion_fig2(const Options& opt);
CheckResult criterion_fig3(const Options& opt);
CheckResult criterion_lemma4(const Options& opt);
CheckResult criterion_fig5(const Options& opt);
CheckResult criterion_speed_sweeps(const Options& opt);
CheckResult criterion_distribution(const Options& opt);
CheckResult criterion_determinism(const Options& opt);

/// Reduced invariant suite for quick runs (fast) or the full acceptance
/// list (full). Unknown levels throw DomainError.
std::vector<CheckResult> run_selftest(const std::string& level, const Options& opt = {});

nlohmann::json report_json(const std::string& level, const std::vector<CheckResult>& results);

/// Measured worst mid-branch |Z - (1 - Q1)| per (alpha, variant); the
/// Fig.-1 check compares against these.
struct Fig1Bound {
    double alpha;
    const char* variant;
    double bound;
};
const std::vector<Fig1Bound>& fig1_bounds();

} // namespace semiq::validation
