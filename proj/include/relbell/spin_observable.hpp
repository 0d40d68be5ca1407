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
/**
 * @file
 * Boosted (relativistic) spin observables.
 *
 * A spin measurement along direction a on a particle moving with velocity
 * beta * e is represented by the unit-direction observable n . sigma with
 *
 *     n = (sqrt(1 - beta^2) a_perp + a_par) / sqrt(1 + beta^2 ((e.a)^2 - 1))
 *
 * where a_par = (e.a) e and a_perp = a - a_par.
 */
#pragma once

#include <array>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "linalg.hpp"

namespace relbell {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    [[nodiscard]] constexpr double dot(const Vec3 &o) const noexcept {
        return x * o.x + y * o.y + z * o.z;
    }
    [[nodiscard]] constexpr Vec3 cross(const Vec3 &o) const noexcept {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    [[nodiscard]] double norm() const noexcept { return std::sqrt(dot(*this)); }

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) noexcept {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) noexcept {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend constexpr Vec3 operator*(double s, Vec3 a) noexcept {
        return {s * a.x, s * a.y, s * a.z};
    }
    friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

/// Real 3-vector of unit length (within 1e-12).
class UnitVector3 {
  public:
    static constexpr double kTolerance = 1e-12;

    UnitVector3(double x, double y, double z) : v_{x, y, z} {
        const double n = v_.norm();
        if (!(std::abs(n - 1.0) <= kTolerance)) {
            throw DomainError("vector (" + std::to_string(x) + ", " +
                              std::to_string(y) + ", " + std::to_string(z) +
                              ") is not unit length");
        }
    }

    explicit UnitVector3(const Vec3 &v) : UnitVector3(v.x, v.y, v.z) {}

    /// Rescale an arbitrary nonzero vector to unit length.
    static UnitVector3 normalized(const Vec3 &v) {
        const double n = v.norm();
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw DomainError("cannot normalize a zero or non-finite vector");
        }
        return UnitVector3(v.x / n, v.y / n, v.z / n, Trusted{});
    }
    static UnitVector3 normalized(double x, double y, double z) {
        return normalized(Vec3{x, y, z});
    }

    static UnitVector3 unit_x() { return {1.0, 0.0, 0.0}; }
    static UnitVector3 unit_y() { return {0.0, 1.0, 0.0}; }
    static UnitVector3 unit_z() { return {0.0, 0.0, 1.0}; }

    /// In the xy-plane at angle phi from the x-axis.
    static UnitVector3 in_plane(double phi) {
        return normalized(std::cos(phi), std::sin(phi), 0.0);
    }

    /// Polar angle theta from +z, azimuth phi from +x.
    static UnitVector3 spherical(double theta, double phi) {
        return normalized(std::sin(theta) * std::cos(phi),
                          std::sin(theta) * std::sin(phi), std::cos(theta));
    }

    [[nodiscard]] double x() const noexcept { return v_.x; }
    [[nodiscard]] double y() const noexcept { return v_.y; }
    [[nodiscard]] double z() const noexcept { return v_.z; }
    [[nodiscard]] const Vec3 &vec() const noexcept { return v_; }
    [[nodiscard]] std::array<double, 3> components() const noexcept {
        return {v_.x, v_.y, v_.z};
    }

    /// Azimuth in (-pi, pi], measured from the x-axis.
    [[nodiscard]] double azimuth() const noexcept {
        return std::atan2(v_.y, v_.x);
    }

    friend bool operator==(const UnitVector3 &, const UnitVector3 &) = default;

  private:
    struct Trusted {};
    UnitVector3(double x, double y, double z, Trusted) : v_{x, y, z} {}

    Vec3 v_;
};

/**
 * Particle velocity beta * direction. beta = 1 is representable so that
 * closed-form limits can be evaluated; matrix construction rejects it.
 */
class Boost {
  public:
    Boost(UnitVector3 direction, double beta)
        : direction_(direction), beta_(beta) {
        if (!(beta >= 0.0 && beta <= 1.0)) {
            throw DomainError("beta = " + std::to_string(beta) +
                              " outside [0, 1]");
        }
    }

    static Boost along_x(double beta) { return {UnitVector3::unit_x(), beta}; }
    static Boost at_rest() { return along_x(0.0); }

    [[nodiscard]] const UnitVector3 &direction() const noexcept {
        return direction_;
    }
    [[nodiscard]] double beta() const noexcept { return beta_; }

    /// sqrt(1 - beta^2).
    [[nodiscard]] double inverse_gamma() const noexcept {
        return std::sqrt((1.0 - beta_) * (1.0 + beta_));
    }

    friend bool operator==(const Boost &, const Boost &) = default;

  private:
    UnitVector3 direction_;
    double beta_;
};

inline constexpr double kObservableDenominatorFloor = 1e-9;

/**
 * Unit direction n such that the boosted observable equals n . sigma.
 * Directions parallel or perpendicular to the boost are fixed points; at
 * beta = 0 the input is returned unchanged.
 */
inline UnitVector3 effective_direction(const UnitVector3 &a,
                                       const Boost &boost) {
    if (boost.beta() == 0.0) {
        return a;
    }
    const Vec3 &e = boost.direction().vec();
    const double c = e.dot(a.vec());
    const Vec3 parallel = c * e;
    const Vec3 perpendicular = a.vec() - parallel;
    const double beta2 = boost.beta() * boost.beta();
    const double denom = std::sqrt(1.0 + beta2 * (c * c - 1.0));
    if (!(denom > kObservableDenominatorFloor)) {
        throw DegenerateObservable("normalization " + std::to_string(denom) +
                                   " at beta = " +
                                   std::to_string(boost.beta()));
    }
    const Vec3 raw = boost.inverse_gamma() * perpendicular + parallel;
    // raw has length denom analytically; dividing by the computed norm keeps
    // the result unit to the last bit.
    return UnitVector3::normalized(raw);
}

/// n . sigma for a unit (or arbitrary) 3-vector.
inline ComplexMatrix spin_matrix(const Vec3 &n) {
    return {Complex{n.z, 0.0}, Complex{n.x, -n.y}, Complex{n.x, n.y},
            Complex{-n.z, 0.0}};
}

inline ComplexMatrix spin_matrix(const UnitVector3 &n) {
    return spin_matrix(n.vec());
}

/// 2x2 boosted spin observable; Hermitian, traceless, squares to identity.
inline ComplexMatrix observable_matrix(const UnitVector3 &a,
                                       const Boost &boost) {
    if (boost.beta() >= 1.0) {
        throw DomainError("observable matrices require beta < 1");
    }
    return spin_matrix(effective_direction(a, boost));
}

} // namespace relbell
