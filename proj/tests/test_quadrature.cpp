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

#include "semiq/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace semiq;

TEST_CASE("gauss-kronrod integrates smooth functions")
{
    const auto r = integrate([](double x) { return std::sin(x); }, 0.0, kPi);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r.error < 1e-10);

    const auto g = integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0);
    CHECK(g.value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
}

TEST_CASE("reversed limits flip the sign")
{
    auto f = [](double x) { return x * x; };
    CHECK(integrate(f, 2.0, 0.0).value == doctest::Approx(-8.0 / 3.0).epsilon(1e-14));
    CHECK(integrate(f, 1.0, 1.0).value == 0.0);
}

TEST_CASE("breakpoints handle a kink")
{
    auto f = [](double x) { return std::abs(x - 0.3); };
    const auto r = integrate(f, 0.0, 1.0, {}, {0.3});
    CHECK(r.value == doctest::Approx(0.5 * 0.09 + 0.5 * 0.49).epsilon(1e-14));
}

TEST_CASE("subdivision cap raises an accuracy error")
{
    ToleranceConfig tol;
    tol.abs_tol = 1e-14;
    tol.rel_tol = 1e-14;
    tol.max_subdivisions = 20;
    auto f = [](double x) { return std::sin(1.0 / x); };
    CHECK_THROWS_AS(integrate(f, 1e-4, 1.0, tol), AccuracyError);
    CHECK_THROWS_AS(integrate(f, 0.0, std::numeric_limits<double>::infinity()), DomainError);
}
