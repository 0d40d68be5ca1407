// Copyright 2026 The relbell Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli_runner.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

using relbell::testing::run_cli;
using relbell::testing::strip_timestamp;

namespace {

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) {
        out.push_back(l);
    }
    return out;
}

std::filesystem::path temp_path(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("relbell_test_" + name);
}

} // namespace

TEST(Cli, SweepCsvRows) {
    const auto r = run_cli("sweep --scenario chsh-collinear --beta-min 0 --beta-max 1 --beta-step 0.25");
    ASSERT_EQ(r.exit_code, 0);
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 6u);
    EXPECT_EQ(ls[0], "beta,scenario,closed_form,numeric_max,state_expectation,residual");
    EXPECT_EQ(ls[1].rfind("0,chsh-collinear,2.8284271247461", 0), 0u) << ls[1];
    // No numeric columns at beta = 1.
    EXPECT_EQ(ls[5], "1,chsh-collinear,2,,,");
}

TEST(Cli, SweepJsonHasMetaAndRows) {
    const auto r = run_cli("--format json --seed 4 sweep --scenario mermin-com --beta-max 0.5 --beta-step 0.5 --prime-swap");
    ASSERT_EQ(r.exit_code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["meta"]["command"], "sweep");
    EXPECT_EQ(j["meta"]["seed"], 4);
    EXPECT_TRUE(j["meta"].contains("version"));
    ASSERT_EQ(j["rows"].size(), 2u);
    EXPECT_NEAR(j["rows"][0]["closed_form"].get<double>(), 4.0, 1e-12);
    EXPECT_NEAR(j["rows"][1]["state_expectation"].get<double>(),
                -j["rows"][1]["closed_form"].get<double>(), 1e-10);
}

TEST(Cli, NoMetaTimeDropsTimestamp) {
    const auto r = run_cli("--format json --no-meta-time sweep --beta-max 0");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_FALSE(nlohmann::json::parse(r.out)["meta"].contains("timestamp"));
}

TEST(Cli, VerifyReportsErrata) {
    const auto r = run_cli("verify --draws 50");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("ghz_diagonal_element,ERRATUM"), std::string::npos);
    EXPECT_EQ(r.out.find(",FAIL,"), std::string::npos);
}

TEST(Cli, OptimizeDefaultsReachReference) {
    const auto r = run_cli("--format json optimize --beta 0.6 --restarts 2");
    ASSERT_EQ(r.exit_code, 0);
    const auto j = nlohmann::json::parse(r.out);
    double value = 0.0;
    for (const auto &row : j["rows"]) {
        if (row["quantity"] == "max_violation") {
            value = row["value"].get<double>();
        }
    }
    EXPECT_GE(value, 2.811127713994909 - 1e-6);
}

TEST(Cli, SampleHasBellRow) {
    const auto r = run_cli("--seed 9 sample --beta 0.5 --shots 20000");
    ASSERT_EQ(r.exit_code, 0);
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 6u);
    EXPECT_EQ(ls.back().rfind("bell,", 0), 0u);
}

TEST(Cli, SettingsFileOverridesDirections) {
    const auto path = temp_path("settings.json");
    {
        std::ofstream f(path);
        f << R"({"a": [1, 0, 0], "a_prime": [1, 0, 0]})";
    }
    const auto r = run_cli("sweep --beta-max 0.5 --beta-step 0.5 --settings " + path.string());
    std::filesystem::remove(path);
    ASSERT_EQ(r.exit_code, 0);
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 3u);
    // a = a' commute, so the bound collapses to 2.
    EXPECT_EQ(ls[1].rfind("0,chsh-collinear,2,2", 0), 0u) << ls[1];
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("sample --shots 0").exit_code, 2);
    EXPECT_EQ(run_cli("sweep --scenario nope").exit_code, 2);
    EXPECT_EQ(run_cli("optimize --beta 1").exit_code, 2);
    EXPECT_EQ(run_cli("").exit_code, 2);
    EXPECT_EQ(run_cli("-o /nonexistent_dir/x.csv sweep --beta-max 0").exit_code, 3);
    EXPECT_EQ(run_cli("sweep --settings /nonexistent.json").exit_code, 3);
}

TEST(Cli, OutputFileMatchesStdout) {
    const auto path = temp_path("out.csv");
    ASSERT_EQ(run_cli("-o " + path.string() + " sweep --beta-max 0.2").exit_code, 0);
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    std::filesystem::remove(path);
    EXPECT_EQ(ss.str(), run_cli("sweep --beta-max 0.2").out);
}

TEST(Cli, RerunsAreByteIdentical) {
    for (const std::string args :
         {"--format json --seed 3 sample --three --boost com --prime-swap --beta 0.4 --shots 70000",
          "--format json --seed 3 optimize --three --beta 0.2 --restarts 2 --grid 6",
          "--format json verify --draws 20"}) {
        const auto a = run_cli(args);
        const auto b = run_cli(args);
        ASSERT_EQ(a.exit_code, 0) << args;
        EXPECT_EQ(strip_timestamp(a.out), strip_timestamp(b.out)) << args;
    }
}
