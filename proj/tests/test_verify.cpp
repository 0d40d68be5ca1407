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

#include <relbell/verify.hpp>

#include <gtest/gtest.h>

#include <map>

using namespace relbell;

namespace {

std::map<std::string, CheckResult> by_name(const std::vector<CheckResult> &v) {
    std::map<std::string, CheckResult> out;
    for (const auto &c : v) {
        out.emplace(c.name, c);
    }
    return out;
}

} // namespace

TEST(Verify, AllChecksPassOrReportErrata) {
    const auto checks = run_verification({1e-10, 200, 1});
    EXPECT_TRUE(verification_passed(checks));
    for (const auto &c : checks) {
        EXPECT_NE(c.status, CheckStatus::fail) << c.name << ": " << c.detail;
    }
}

TEST(Verify, ExpectedErrata) {
    const auto m = by_name(run_verification({1e-10, 100, 2}));
    for (const char *name :
         {"phi_plus_correlator_z_term", "mermin_square_plane_form_swapped_labels",
          "mermin_collinear_ghz_reference_assignment", "ghz_diagonal_element",
          "com_primed_observables_alternative_coefficient"}) {
        ASSERT_TRUE(m.contains(name)) << name;
        EXPECT_EQ(m.at(name).status, CheckStatus::erratum) << name;
    }
    EXPECT_EQ(m.at("com_primed_observables").status, CheckStatus::pass);
    EXPECT_EQ(m.at("mermin_collinear_ghz_swapped").status, CheckStatus::pass);
}

TEST(Verify, ReferenceAssignmentGhzIsZero) {
    const auto m = by_name(run_verification({1e-10, 50, 3}));
    const auto &c = m.at("mermin_collinear_ghz_reference_assignment");
    ASSERT_TRUE(c.value);
    EXPECT_NEAR(*c.value, 0.0, 1e-10);
}

TEST(Verify, Deterministic) {
    const auto a = run_verification({1e-10, 100, 5});
    const auto b = run_verification({1e-10, 100, 5});
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].residual, b[i].residual) << a[i].name;
    }
}

TEST(Verify, TinyToleranceFails) {
    EXPECT_FALSE(verification_passed(run_verification({1e-30, 20, 1})));
}

TEST(MerminPlaneForm, DerivedLegsMatchSquare) {
    DrawSource d(8);
    for (int i = 0; i < 200; ++i) {
        const MerminSettings s = random_plane_mermin(d, 0.7);
        const ComplexMatrix op = mermin_operator(s);
        EXPECT_LT(max_abs_diff(op * op, mermin_square_plane_form(s)), 1e-12);
    }
}
