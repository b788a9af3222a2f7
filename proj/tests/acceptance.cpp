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

// Runs every acceptance criterion once and prints one PASS/FAIL line each.
// Exit status is 0 only when all criteria pass.

#include "semiq/validation.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

int main(int argc, char** argv)
{
    semiq::validation::Options opt;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc) opt.workers = std::atoi(argv[++i]);
    }
    opt.on_result = [](const semiq::validation::CheckResult& r) {
        std::printf("%s criterion %s: %s [%.2f s]\n    %s\n", r.passed ? "PASS" : "FAIL", r.id.c_str(),
                    r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
    };
    const auto results = semiq::validation::run_acceptance(opt);
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
