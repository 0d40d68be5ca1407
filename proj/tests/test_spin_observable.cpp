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

#include <relbell/spin_observable.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace relbell;

namespace {

UnitVector3 random_direction(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    return UnitVector3::normalized(g(rng), g(rng), g(rng));
}

void expect_vec_near(const UnitVector3 &u, const Vec3 &v, double tol) {
    EXPECT_NEAR(u.x(), v.x, tol);
    EXPECT_NEAR(u.y(), v.y, tol);
    EXPECT_NEAR(u.z(), v.z, tol);
}

} // namespace

TEST(EffectiveDirection, ParallelToBoostIsFixed) {
    const auto n = effective_direction(UnitVector3::unit_x(), Boost::along_x(0.9));
    expect_vec_near(n, {1, 0, 0}, 1e-15);
}

TEST(EffectiveDirection, PerpendicularToBoostIsFixed) {
    const auto n = effective_direction(UnitVector3::unit_y(), Boost::along_x(0.8));
    expect_vec_near(n, {0, 1, 0}, 1e-15);
}

TEST(EffectiveDirection, DiagonalUnderXBoost) {
    // (1, 0.6, 0) / sqrt(1.36)
    const auto a = UnitVector3::normalized(1.0, 1.0, 0.0);
    const auto n = effective_direction(a, Boost::along_x(0.8));
    expect_vec_near(n, {0.8574929257125441, 0.5144957554275265, 0.0}, 1e-12);
}

TEST(EffectiveDirection, RestReturnsInputExactly) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto a = random_direction(rng);
        const Boost rest(random_direction(rng), 0.0);
        EXPECT_EQ(effective_direction(a, rest), a);
    }
}

TEST(EffectiveDirection, FixedPointsForAllBeta) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> beta(0.0, 0.999);
    for (int i = 0; i < 500; ++i) {
        const auto e = random_direction(rng);
        const Boost boost(e, beta(rng));
        expect_vec_near(effective_direction(e, boost), e.vec(), 1e-12);
        // Any direction perpendicular to e.
        const auto perp = UnitVector3::normalized(e.vec().cross(random_direction(rng).vec()));
        expect_vec_near(effective_direction(perp, boost), perp.vec(), 1e-12);
    }
}

TEST(EffectiveDirection, SurjectiveOntoSphere) {
    // Invert x -> x, (y, z) -> (y, z) / sqrt(1 - beta^2) for an x boost, then
    // renormalize; mapping forward must land on the target.
    std::mt19937_64 rng(13);
    for (double beta : {0.3, 0.6, 0.9, 0.999}) {
        const double g = std::sqrt(1.0 - beta * beta);
        for (int i = 0; i < 500; ++i) {
            const auto target = random_direction(rng);
            const auto source =
                UnitVector3::normalized(target.x(), target.y() / g, target.z() / g);
            const auto n = effective_direction(source, Boost::along_x(beta));
            expect_vec_near(n, target.vec(), 1e-10);
        }
    }
}

TEST(EffectiveDirection, DegenerateAtLightSpeedPerpendicular) {
    EXPECT_THROW(effective_direction(UnitVector3::unit_y(), Boost::along_x(1.0)),
                 DegenerateObservable);
    // Not perpendicular: the limit is the boost axis.
    const auto n = effective_direction(UnitVector3::normalized(1, 1, 0), Boost::along_x(1.0));
    expect_vec_near(n, {1, 0, 0}, 1e-15);
}

TEST(EffectiveDirection, NearLightSpeedStillConstructs) {
    const auto n = effective_direction(UnitVector3::normalized(1, 2, 3), Boost::along_x(0.999999));
    EXPECT_NEAR(n.vec().norm(), 1.0, 1e-12);
}

TEST(ObservableMatrix, AlongBoostIsSigmaX) {
    const auto m = observable_matrix(UnitVector3::unit_x(), Boost::along_x(0.5));
    EXPECT_LT(max_abs_diff(m, pauli::x()), 1e-15);
}

TEST(ObservableMatrix, RestReducesToPauliCombination) {
    const auto m = observable_matrix(UnitVector3::unit_y(), Boost::at_rest());
    EXPECT_EQ(m, pauli::y());
}

TEST(ObservableMatrix, DiagonalUnderXBoost) {
    const auto m = observable_matrix(UnitVector3::normalized(1, 1, 0), Boost::along_x(0.8));
    const ComplexMatrix expected =
        Complex{0.8574929257125441} * pauli::x() + Complex{0.5144957554275265} * pauli::y();
    EXPECT_LT(max_abs_diff(m, expected), 1e-12);
}

TEST(ObservableMatrix, ContractsOnRandomDraws) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> beta(0.0, 0.999);
    for (int i = 0; i < 10000; ++i) {
        const Boost boost(random_direction(rng), beta(rng));
        const auto m = observable_matrix(random_direction(rng), boost);
        EXPECT_LT(m.hermiticity_defect(), 1e-12);
        EXPECT_LT(std::abs(m.trace()), 1e-12);
        EXPECT_TRUE((m * m).is_identity(1e-12));
    }
}

TEST(ObservableMatrix, RejectsLightSpeed) {
    EXPECT_THROW(observable_matrix(UnitVector3::unit_x(), Boost::along_x(1.0)), DomainError);
}

TEST(Boost, Validation) {
    EXPECT_THROW(Boost::along_x(-0.1), DomainError);
    EXPECT_THROW(Boost::along_x(1.5), DomainError);
    EXPECT_THROW(Boost::along_x(std::nan("")), DomainError);
    EXPECT_NO_THROW(Boost::along_x(1.0));
    EXPECT_NEAR(Boost::along_x(0.6).inverse_gamma(), 0.8, 1e-15);
}

TEST(UnitVector3, Validation) {
    EXPECT_THROW(UnitVector3(1.0, 1.0, 0.0), DomainError);
    EXPECT_THROW(UnitVector3::normalized(0.0, 0.0, 0.0), DomainError);
    EXPECT_NO_THROW(UnitVector3(0.6, 0.8, 0.0));
    EXPECT_NEAR(UnitVector3::in_plane(std::numbers::pi / 2).y(), 1.0, 1e-15);
    EXPECT_NEAR(UnitVector3::spherical(0.0, 1.0).z(), 1.0, 1e-15);
}
