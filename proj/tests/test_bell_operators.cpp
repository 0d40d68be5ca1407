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

#include <relbell/bell_operators.hpp>
#include <relbell/scenarios.hpp>
#include <relbell/state_correlators.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace relbell;

namespace {

constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;

struct Draws {
    explicit Draws(std::uint64_t seed) : rng(seed) {}
    std::mt19937_64 rng;
    std::uniform_real_distribution<double> angle{-std::numbers::pi, std::numbers::pi};
    std::normal_distribution<double> gauss;

    UnitVector3 plane() { return UnitVector3::in_plane(angle(rng)); }
    UnitVector3 sphere() {
        return UnitVector3::normalized(gauss(rng), gauss(rng), gauss(rng));
    }
    double beta(double hi = 0.99) {
        return std::uniform_real_distribution<double>(0.0, hi)(rng);
    }
};

ChshSettings plane_chsh(Draws &d, double beta) {
    return {d.plane(), d.plane(), d.plane(), d.plane(), Boost::along_x(beta),
            Boost::along_x(beta)};
}

MerminSettings random_mermin(Draws &d) {
    const double beta = d.beta();
    return {d.sphere(), d.sphere(), d.sphere(), d.sphere(), d.sphere(), d.sphere(),
            Boost(d.sphere(), beta), Boost(d.sphere(), beta), Boost(d.sphere(), beta)};
}

std::vector<Complex> basis(std::size_t dim, std::size_t index) {
    std::vector<Complex> v(dim);
    v[index] = 1.0;
    return v;
}

} // namespace

TEST(ChshOperator, ReferenceSettingsAtRestReachTsirelson) {
    const ComplexMatrix op = chsh_operator(chsh_reference_settings(0.0));
    EXPECT_TRUE(op.is_hermitian(1e-14));
    EXPECT_NEAR(eigenvalues(op).back(), kTsirelson, 1e-12);
}

TEST(ChshOperator, CollapsedSettings) {
    const auto z = UnitVector3::unit_z();
    const ChshSettings s{z, z, z, z, Boost::at_rest(), Boost::at_rest()};
    const ComplexMatrix op = chsh_operator(s);
    EXPECT_LT(max_abs_diff(op, 2.0 * kron(pauli::z(), pauli::z())), 1e-15);
    const auto ev = eigenvalues(op);
    EXPECT_NEAR(ev[0], -2.0, 1e-14);
    EXPECT_NEAR(ev[1], -2.0, 1e-14);
    EXPECT_NEAR(ev[2], 2.0, 1e-14);
    EXPECT_NEAR(ev[3], 2.0, 1e-14);
}

TEST(ChshOperator, ReferenceSettingsAtBeta06) {
    // 3.6 / sqrt(1.64)
    EXPECT_NEAR(eigenvalues(chsh_operator(chsh_reference_settings(0.6))).back(),
                2.811127713994909, 1e-12);
}

TEST(ChshSquare, IdentitiesOnRandomPlaneSettings) {
    Draws d(21);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_LT(chsh_square_identity_residual(plane_chsh(d, 0.6)), 1e-12);
    }
}

TEST(ChshSquare, IdentitiesOnRandomSphereSettings) {
    Draws d(22);
    for (int i = 0; i < 500; ++i) {
        const double beta = d.beta();
        const ChshSettings s{d.sphere(), d.sphere(), d.sphere(), d.sphere(),
                             Boost(d.sphere(), beta), Boost(d.sphere(), d.beta())};
        EXPECT_FALSE(in_collinear_plane_domain(s));
        EXPECT_LT(chsh_square_identity_residual(s), 1e-12);
    }
}

TEST(ChshSquare, CrossFormAtRestForReferenceSettings) {
    const ChshSettings s = chsh_reference_settings(0.0);
    const ComplexMatrix op = chsh_operator(s);
    EXPECT_LT(max_abs_diff(op * op, chsh_square_cross_form(s)), 1e-12);
    EXPECT_LT(chsh_square_identity_residual(s), 1e-12);
}

TEST(ChshSquare, CommutingSettingsGiveFourIdentity) {
    Draws d(23);
    const auto a = d.plane();
    const ChshSettings s{a, a, d.plane(), d.plane(), Boost::along_x(0.4),
                         Boost::along_x(0.4)};
    const ComplexMatrix op = chsh_operator(s);
    EXPECT_TRUE((op * op - 4.0 * ComplexMatrix::identity(4)).is_identity(1e-12) == false);
    EXPECT_LT(max_abs_diff(op * op, 4.0 * ComplexMatrix::identity(4)), 1e-12);
    EXPECT_LT(chsh_square_identity_residual(s), 1e-12);
}

TEST(ChshZeta, Examples) {
    EXPECT_NEAR(chsh_zeta(chsh_reference_settings(0.0)), 8.0, 1e-12);
    // 4 (1 + 1.6 / 1.64)
    EXPECT_NEAR(chsh_zeta(chsh_reference_settings(0.6)), 7.902439024390244, 1e-12);
    auto s = chsh_reference_settings(0.6);
    s.a_prime = s.a;
    EXPECT_DOUBLE_EQ(chsh_zeta(s), 4.0);
}

TEST(ChshZeta, DomainRestriction) {
    auto s = chsh_reference_settings(0.5);
    s.b = UnitVector3::unit_z();
    EXPECT_THROW(chsh_zeta(s), DomainRestriction);
    auto t = chsh_reference_settings(0.5);
    t.boost2 = Boost(UnitVector3::unit_y(), 0.5);
    EXPECT_THROW(chsh_zeta(t), DomainRestriction);
    auto u = chsh_reference_settings(0.5);
    u.boost2 = Boost::along_x(0.4);
    EXPECT_THROW(chsh_zeta(u), DomainRestriction);
}

TEST(ChshZeta, MatchesSpectrumAndStaysInWindow) {
    Draws d(24);
    for (double beta : {0.0, 0.3, 0.6, 0.9, 0.99}) {
        for (int i = 0; i < 1000; ++i) {
            const ChshSettings s = plane_chsh(d, beta);
            const ComplexMatrix op = chsh_operator(s);
            const double zeta = chsh_zeta(s);
            EXPECT_GE(zeta, 4.0);
            EXPECT_LE(zeta, 8.0);
            EXPECT_NEAR(eigenvalues(op * op).back(), zeta, 1e-10);
        }
    }
}

TEST(ChshZeta, AzimuthBranchIsImmaterial) {
    // Same geometry via cross products of effective directions.
    Draws d(25);
    for (int i = 0; i < 500; ++i) {
        const double beta = d.beta();
        const ChshSettings s = plane_chsh(d, beta);
        const Boost b = Boost::along_x(beta);
        const double ka = effective_direction(s.a, b).vec().cross(
                              effective_direction(s.a_prime, b).vec()).norm();
        const double kb = effective_direction(s.b, b).vec().cross(
                              effective_direction(s.b_prime, b).vec()).norm();
        EXPECT_NEAR(chsh_zeta(s), 4.0 * (1.0 + ka * kb), 1e-12);
    }
}

TEST(ChshZeta, DegenerateEigenvectorsFollowSignRule) {
    Draws d(26);
    for (double beta : {0.0, 0.5, 0.9}) {
        for (int i = 0; i < 500; ++i) {
            const ChshSettings s = plane_chsh(d, beta);
            const ComplexMatrix op = chsh_operator(s);
            const ComplexMatrix sq = op * op;
            const double zeta = chsh_zeta(s);
            const double sa = std::sin(s.a.azimuth() - s.a_prime.azimuth());
            const double sb = std::sin(s.b.azimuth() - s.b_prime.azimuth());
            const bool same = sa * sb >= 0.0;
            for (std::size_t idx : same ? std::array<std::size_t, 2>{0, 3}
                                        : std::array<std::size_t, 2>{1, 2}) {
                const auto v = basis(4, idx);
                const auto image = apply_operator(sq, v);
                for (std::size_t k = 0; k < 4; ++k) {
                    EXPECT_LT(std::abs(image[k] - zeta * v[k]), 1e-10);
                }
            }
        }
    }
}

TEST(ChshOperator, SpectralWindowAndSquareRoot) {
    Draws d(27);
    for (int i = 0; i < 1000; ++i) {
        const double beta = d.beta();
        const ChshSettings s{d.sphere(), d.sphere(), d.sphere(), d.sphere(),
                             Boost(d.sphere(), beta), Boost(d.sphere(), beta)};
        const ComplexMatrix op = chsh_operator(s);
        const auto ev = eigenvalues(op);
        EXPECT_GE(ev.front(), -kTsirelson - 1e-10);
        EXPECT_LE(ev.back(), kTsirelson + 1e-10);
        EXPECT_NEAR(std::sqrt(eigenvalues(op * op).back()), max_violation(op), 1e-10);
    }
}

TEST(MerminOperator, GhzExpectationBothAssignments) {
    const StateVector ghz = ghz_plus().vector;
    // a = b = c = x, a' = b' = c' = y
    const ComplexMatrix swapped = mermin_operator(mermin_collinear_settings(0.0, true));
    EXPECT_NEAR(expectation(ghz, swapped), -4.0, 1e-12);
    // a = b = c = y, a' = b' = c' = x
    const ComplexMatrix reference = mermin_operator(mermin_collinear_settings(0.0));
    EXPECT_NEAR(expectation(ghz, reference), 0.0, 1e-12);
}

TEST(MerminOperator, CollapsedSettings) {
    Draws d(31);
    const auto n = d.sphere();
    const Boost r = Boost::at_rest();
    const MerminSettings s{n, n, n, n, n, n, r, r, r};
    const ComplexMatrix op = mermin_operator(s);
    const ComplexMatrix o = spin_matrix(n);
    EXPECT_LT(max_abs_diff(op, 2.0 * kron(o, o, o)), 1e-14);
    for (double v : eigenvalues(op)) {
        EXPECT_NEAR(std::abs(v), 2.0, 1e-12);
    }
}

TEST(MerminSquare, ClosedFormMatchesBruteForce) {
    Draws d(32);
    for (int i = 0; i < 1000; ++i) {
        const MerminSettings s = random_mermin(d);
        const ComplexMatrix op = mermin_operator(s);
        EXPECT_LT(max_abs_diff(op * op, mermin_square_closed_form(s)), 1e-12);
    }
}

TEST(MerminSquare, PlaneSettingsCollinearBoost) {
    Draws d(33);
    for (int i = 0; i < 200; ++i) {
        const Boost b = Boost::along_x(0.5);
        const MerminSettings s{d.plane(), d.plane(), d.plane(), d.plane(),
                               d.plane(), d.plane(), b, b, b};
        const ComplexMatrix op = mermin_operator(s);
        EXPECT_LT(max_abs_diff(op * op, mermin_square_closed_form(s)), 1e-12);
    }
}

TEST(MerminSquare, CommutingSettingsGiveFourIdentity) {
    Draws d(34);
    const auto a = d.sphere(), b = d.sphere(), c = d.sphere();
    const Boost r = Boost::along_x(0.3);
    const MerminSettings s{a, a, b, b, c, c, r, r, r};
    EXPECT_LT(max_abs_diff(mermin_square_closed_form(s), 4.0 * ComplexMatrix::identity(8)),
              1e-15);
}

TEST(MerminSquare, ReferenceSettingsReachSixteen) {
    for (double beta : {0.0, 0.4, 0.8, 0.99}) {
        EXPECT_NEAR(eigenvalues(mermin_square_closed_form(mermin_collinear_settings(beta))).back(),
                    16.0, 1e-12);
    }
}

TEST(MerminLambda3, Examples) {
    for (double beta : {0.0, 0.3, 0.7, 0.95}) {
        EXPECT_NEAR(mermin_lambda3(mermin_collinear_settings(beta)), 16.0, 1e-12);
    }
    // 4 (1 + 8 * 0.8 / sqrt(10.6288) + 16 * 0.64 / 10.6288)
    const MerminSettings com = mermin_com_settings(0.6);
    EXPECT_NEAR(mermin_lambda3(com), 15.705997998216805, 1e-12);
    EXPECT_NEAR(eigenvalues(mermin_square_closed_form(com)).back(), 15.705997998216805, 1e-10);

    const auto y = UnitVector3::unit_y();
    const Boost b = Boost::along_x(0.5);
    EXPECT_DOUBLE_EQ(mermin_lambda3({y, y, y, y, y, y, b, b, b}), 4.0);
}

TEST(MerminLambda3, DomainRestriction) {
    auto s = mermin_collinear_settings(0.5);
    s.c = UnitVector3::unit_z();
    EXPECT_THROW(mermin_lambda3(s), DomainRestriction);
    auto t = mermin_collinear_settings(0.5);
    t.boost2 = Boost(UnitVector3::unit_z(), 0.5);
    EXPECT_THROW(mermin_lambda3(t), DomainRestriction);
}

TEST(MerminLambda3, SignPatternIsAttainable) {
    // Coplanar settings with independent in-plane boosts.
    Draws d(35);
    for (int i = 0; i < 1000; ++i) {
        const double beta = d.beta();
        const MerminSettings s{d.plane(), d.plane(), d.plane(), d.plane(), d.plane(),
                               d.plane(), Boost(d.plane(), beta), Boost(d.plane(), beta),
                               Boost(d.plane(), beta)};
        EXPECT_NEAR(eigenvalues(mermin_square_closed_form(s)).back(), mermin_lambda3(s),
                    1e-10);
    }
}

TEST(MerminOperator, SpectralWindowAndSquareRoot) {
    Draws d(36);
    for (int i = 0; i < 500; ++i) {
        const ComplexMatrix op = mermin_operator(random_mermin(d));
        const auto ev = eigenvalues(op);
        EXPECT_GE(ev.front(), -4.0 - 1e-10);
        EXPECT_LE(ev.back(), 4.0 + 1e-10);
        EXPECT_NEAR(std::sqrt(eigenvalues(op * op).back()), max_violation(op), 1e-10);
    }
}

TEST(MerminSquare, ZeroEigenvectorWhenAllPairsOrthogonal) {
    Draws d(37);
    const Boost r = Boost::at_rest();
    const double h = std::numbers::pi / 2;
    const double pa = d.angle(d.rng), pb = d.angle(d.rng), pc = d.angle(d.rng);
    const MerminSettings s{UnitVector3::in_plane(pa), UnitVector3::in_plane(pa - h),
                           UnitVector3::in_plane(pb), UnitVector3::in_plane(pb - h),
                           UnitVector3::in_plane(pc), UnitVector3::in_plane(pc - h),
                           r, r, r};
    const ComplexMatrix op = mermin_operator(s);
    for (const auto &x : apply_operator(op * op, basis(8, 1))) {
        EXPECT_LT(std::abs(x), 1e-10);
    }
}

TEST(MaxViolation, Examples) {
    EXPECT_NEAR(max_violation(chsh_operator(chsh_reference_settings(0.0))), kTsirelson, 1e-12);
    EXPECT_NEAR(max_violation(mermin_operator(mermin_collinear_settings(0.0))), 4.0, 1e-12);
    EXPECT_NEAR(max_violation(kron(pauli::z(), pauli::z())), 1.0, 1e-15);
    EXPECT_THROW(max_violation(ComplexMatrix{0.0, 1.0, 0.0, 0.0}), NotHermitian);
}
