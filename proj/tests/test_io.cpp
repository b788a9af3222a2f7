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

#include <doctest.h>

#include <cstdio>
#include <filesystem>

using namespace semiq;

TEST_CASE("number formatting round trips")
{
    for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5, 0.0}) {
        CHECK(parse_double(format_double(x), "x") == x);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK_THROWS_AS(parse_double("1.5x", "alpha"), DomainError);
    CHECK_THROWS_AS(parse_double("", "alpha"), DomainError);
    CHECK(parse_int("42", "n") == 42);
    CHECK_THROWS_AS(parse_int("4.2", "n"), DomainError);
}

TEST_CASE("error messages name the parameter")
{
    try {
        parse_double("abc", "alpha");
        FAIL("expected a throw");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("alpha") != std::string::npos);
    }
}

TEST_CASE("range syntax")
{
    CHECK(parse_range("0:0.5:2", "v") == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
    CHECK(parse_range("3", "v") == std::vector<double>{3.0});
    CHECK(parse_range("1, 2,5", "v") == std::vector<double>{1.0, 2.0, 5.0});
    const auto ab = parse_range("0:1", "v");
    CHECK(ab.size() == 101);
    CHECK(ab.back() == 1.0);
    const auto f = linear_range(0.5, 0.05, 1.0);
    CHECK(f.size() == 11);
    CHECK(f[3] == 0.65);
    CHECK(f.back() == 1.0);
    CHECK_THROWS_AS(parse_range("2:1", "v"), DomainError);
    CHECK_THROWS_AS(parse_range("0:0:1", "v"), DomainError);
    CHECK_THROWS_AS(parse_range("0:1:2:3", "v"), DomainError);
}

TEST_CASE("key value files")
{
    const auto kv = parse_key_values("# comment\nvariable = snr_db\n\n values=0:2:30  # trailing\n");
    REQUIRE(kv.size() == 2);
    CHECK(kv[0].first == "variable");
    CHECK(kv[1].second == "0:2:30");
    CHECK_THROWS_AS(parse_key_values("a = 1\na = 2\n"), DomainError);
    CHECK_THROWS_AS(parse_key_values("just words\n"), DomainError);
}

TEST_CASE("csv quoting round trips")
{
    const Table t = {{"a", "b,c", "say \"hi\""}, {"1", "", "line\nbreak"}};
    const std::string text = write_csv(t);
    CHECK(read_csv(text) == t);
    CHECK(write_csv(read_csv(text)) == text);
}

TEST_CASE("sweep spec files")
{
    const SweepSpec s = parse_sweep_spec("variable = speed_kmh\nvalues = 100:1:110\nv_kmh = 90\ndelta_ms = 5.35\n"
                                         "snr_db = 10\nrealizations = 2000\nseed = 3\npolicies = exact, genie\n"
                                         "label = test\n");
    CHECK(s.variable == SweepVariable::SpeedKmh);
    CHECK(s.values.size() == 11);
    CHECK(s.scenario.delay == doctest::Approx(5.35e-3).epsilon(1e-15));
    CHECK(s.scenario.power == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(s.realizations == 2000);
    CHECK(s.seed == 3);
    CHECK(s.policies == std::vector<Policy>{Policy::ExactSearch, Policy::Genie});
    CHECK(s.label == "test");
    CHECK_THROWS_AS(parse_sweep_spec("values = 1:2\n"), DomainError);
    CHECK_THROWS_AS(parse_sweep_spec("variable = snr_db\n"), DomainError);
    CHECK_THROWS_AS(parse_sweep_spec("variable = snr_db\nvalues = 1\ncolour = red\n"), DomainError);
    CHECK_THROWS_AS(parse_sweep_spec("variable = snr_db\nvalues = 1\nkappa = 2\n"), DomainError);
}

TEST_CASE("sweep output formats")
{
    SweepSpec spec = preset("fig5").front();
    spec.values = {10.0};
    spec.realizations = 1000;
    spec.policies = {Policy::NoAdaptation};
    const SweepResult r = run_sweep(spec);
    const std::string csv = sweep_csv(r);
    CHECK(csv.rfind(kSweepCsvHeader, 0) == 0);
    CHECK(write_csv(read_csv(csv)) == csv);
    const auto rows = read_csv(csv);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][0] == "snr_db");
    CHECK(rows[1][2] == "no_adaptation");
    CHECK(parse_double(rows[1][3], "mean") == r.rows[0].mean_throughput);

    const auto j = sweep_json(r);
    CHECK(j["rows"].size() == 1);
    CHECK(j["rows"][0]["policy"] == "no_adaptation");
    CHECK(j["spec"]["scenario"]["delay_s"].get<double>() == doctest::Approx(5e-3));
    CHECK(j["rows"][0]["analytic_npcu"].is_number());
}

TEST_CASE("atomic file writes")
{
    const auto dir = std::filesystem::temp_directory_path() / "semiq_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "out.txt").string();
    write_file_atomic(path, "hello\n");
    CHECK(read_file(path) == "hello\n");
    CHECK(!std::filesystem::exists(path + ".tmp"));
    CHECK_THROWS(read_file((dir / "missing.txt").string()));
    std::filesystem::remove_all(dir);
}
