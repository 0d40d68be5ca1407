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
 * Two-qubit CHSH and three-qubit Mermin-type Bell operators built from
 * boosted spin observables, their squares and closed-form spectra.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "errors.hpp"
#include "linalg.hpp"
#include "spin_observable.hpp"

namespace relbell {

inline constexpr double kPlaneTolerance = 1e-12;

/// Measurement directions a, a' (particle 1) and b, b' (particle 2).
struct ChshSettings {
    UnitVector3 a;
    UnitVector3 a_prime;
    UnitVector3 b;
    UnitVector3 b_prime;
    Boost boost1;
    Boost boost2;
};

/// Directions a, a', b, b', c, c' for particles 1, 2, 3.
struct MerminSettings {
    UnitVector3 a;
    UnitVector3 a_prime;
    UnitVector3 b;
    UnitVector3 b_prime;
    UnitVector3 c;
    UnitVector3 c_prime;
    Boost boost1;
    Boost boost2;
    Boost boost3;

    /// Exchange every primed direction with its unprimed partner.
    [[nodiscard]] MerminSettings primes_swapped() const {
        return {a_prime, a, b_prime, b, c_prime, c, boost1, boost2, boost3};
    }
};

struct ChshObservables {
    ComplexMatrix a, a_prime, b, b_prime;
};

struct MerminObservables {
    ComplexMatrix a, a_prime, b, b_prime, c, c_prime;
};

inline ChshObservables chsh_observables(const ChshSettings &s) {
    return {observable_matrix(s.a, s.boost1),
            observable_matrix(s.a_prime, s.boost1),
            observable_matrix(s.b, s.boost2),
            observable_matrix(s.b_prime, s.boost2)};
}

inline MerminObservables mermin_observables(const MerminSettings &s) {
    return {observable_matrix(s.a, s.boost1),
            observable_matrix(s.a_prime, s.boost1),
            observable_matrix(s.b, s.boost2),
            observable_matrix(s.b_prime, s.boost2),
            observable_matrix(s.c, s.boost3),
            observable_matrix(s.c_prime, s.boost3)};
}

inline ComplexMatrix chsh_operator(const ChshObservables &o) {
    return kron(o.a, o.b + o.b_prime) + kron(o.a_prime, o.b - o.b_prime);
}

/// a (x) (b + b') + a' (x) (b - b') with every factor boosted.
inline ComplexMatrix chsh_operator(const ChshSettings &s) {
    return chsh_operator(chsh_observables(s));
}

/// 4 I - [a, a'] (x) [b, b'].
inline ComplexMatrix chsh_square_commutator_form(const ChshObservables &o) {
    return 4.0 * ComplexMatrix::identity(4) -
           kron(commutator(o.a, o.a_prime), commutator(o.b, o.b_prime));
}

/// 4 [I + ((n_a x n_a') . sigma) (x) ((n_b x n_b') . sigma)] on the
/// effective directions; the cross products carry the sines of the angles.
inline ComplexMatrix chsh_square_cross_form(const ChshSettings &s) {
    const Vec3 c = effective_direction(s.a, s.boost1)
                       .vec()
                       .cross(effective_direction(s.a_prime, s.boost1).vec());
    const Vec3 d = effective_direction(s.b, s.boost2)
                       .vec()
                       .cross(effective_direction(s.b_prime, s.boost2).vec());
    return 4.0 * (ComplexMatrix::identity(4) +
                  kron(spin_matrix(c), spin_matrix(d)));
}

namespace detail {

inline bool in_xy_plane(const UnitVector3 &v) {
    return std::abs(v.z()) <= kPlaneTolerance;
}

inline bool along_x_axis(const Boost &b) {
    return std::abs(b.direction().y()) <= kPlaneTolerance &&
           std::abs(b.direction().z()) <= kPlaneTolerance;
}

/// 1 + beta^2 (v_x^2 - 1): squared normalization for an x-axis boost.
inline double x_boost_norm2(const UnitVector3 &v, double beta) {
    return 1.0 + beta * beta * (v.x() * v.x() - 1.0);
}

/// (1 - beta^2) sin(phi_1 - phi_1') sin(phi_2 - phi_2') / sqrt(prod of the
/// four x-boost normalizations). Angles come from atan2 in (-pi, pi].
inline double x_boost_pair_coefficient(const UnitVector3 &p,
                                       const UnitVector3 &p_prime,
                                       const UnitVector3 &q,
                                       const UnitVector3 &q_prime,
                                       double beta) {
    const double denom2 = x_boost_norm2(p, beta) * x_boost_norm2(p_prime, beta) *
                          x_boost_norm2(q, beta) * x_boost_norm2(q_prime, beta);
    if (!(denom2 > 0.0)) {
        throw DegenerateObservable("vanishing normalization at beta = " +
                                   std::to_string(beta));
    }
    return (1.0 - beta * beta) * std::sin(p.azimuth() - p_prime.azimuth()) *
           std::sin(q.azimuth() - q_prime.azimuth()) / std::sqrt(denom2);
}

} // namespace detail

/// True when every direction lies in the xy-plane and both particles are
/// boosted along the x-axis with the same speed.
inline bool in_collinear_plane_domain(const ChshSettings &s) {
    return detail::in_xy_plane(s.a) && detail::in_xy_plane(s.a_prime) &&
           detail::in_xy_plane(s.b) && detail::in_xy_plane(s.b_prime) &&
           detail::along_x_axis(s.boost1) && detail::along_x_axis(s.boost2) &&
           s.boost1.beta() == s.boost2.beta();
}

inline bool in_collinear_plane_domain(const MerminSettings &s) {
    for (const auto *v : {&s.a, &s.a_prime, &s.b, &s.b_prime, &s.c,
                          &s.c_prime}) {
        if (!detail::in_xy_plane(*v)) {
            return false;
        }
    }
    return detail::along_x_axis(s.boost1) && detail::along_x_axis(s.boost2) &&
           detail::along_x_axis(s.boost3) && s.boost1.beta() == s.boost2.beta() &&
           s.boost2.beta() == s.boost3.beta();
}

/// Signed sigma_z (x) sigma_z coefficient of the squared CHSH operator in
/// the collinear plane geometry.
inline double chsh_plane_coefficient(const ChshSettings &s) {
    if (!in_collinear_plane_domain(s)) {
        throw DomainRestriction(
            "needs xy-plane directions and a common x-axis boost");
    }
    return detail::x_boost_pair_coefficient(s.a, s.a_prime, s.b, s.b_prime,
                                            s.boost1.beta());
}

/// 4 [I (x) I + k sigma_z (x) sigma_z] in the collinear plane geometry.
inline ComplexMatrix chsh_square_plane_form(const ChshSettings &s) {
    const double k = chsh_plane_coefficient(s);
    return 4.0 * (ComplexMatrix::identity(4) +
                  Complex{k} * kron(pauli::z(), pauli::z()));
}

/**
 * Largest entrywise residual between the brute-force square of the CHSH
 * operator and its closed forms: the commutator form and the cross-product
 * form always, and the sigma_z (x) sigma_z form when the settings lie in
 * the collinear plane geometry.
 */
inline double chsh_square_identity_residual(const ChshSettings &s) {
    const ChshObservables o = chsh_observables(s);
    const ComplexMatrix op = chsh_operator(o);
    const ComplexMatrix square = op * op;
    double residual = max_abs_diff(square, chsh_square_commutator_form(o));
    residual = std::max(residual, max_abs_diff(square, chsh_square_cross_form(s)));
    if (in_collinear_plane_domain(s)) {
        residual =
            std::max(residual, max_abs_diff(square, chsh_square_plane_form(s)));
    }
    return residual;
}

/// Largest eigenvalue of the squared CHSH operator in the collinear plane
/// geometry: 4 (1 + |k|). Always in [4, 8].
inline double chsh_zeta(const ChshSettings &s) {
    return 4.0 * (1.0 + std::abs(chsh_plane_coefficient(s)));
}

inline ComplexMatrix mermin_operator(const MerminObservables &o) {
    return kron(o.a, o.b_prime, o.c_prime) + kron(o.a_prime, o.b, o.c_prime) +
           kron(o.a_prime, o.b_prime, o.c) - kron(o.a, o.b, o.c);
}

/// a b' c' + a' b c' + a' b' c - a b c.
inline ComplexMatrix mermin_operator(const MerminSettings &s) {
    return mermin_operator(mermin_observables(s));
}

inline ComplexMatrix mermin_square_closed_form(const MerminObservables &o) {
    const ComplexMatrix id = pauli::identity();
    const ComplexMatrix ca = commutator(o.a, o.a_prime);
    const ComplexMatrix cb = commutator(o.b, o.b_prime);
    const ComplexMatrix cc = commutator(o.c, o.c_prime);
    return 4.0 * ComplexMatrix::identity(8) - kron(ca, cb, id) -
           kron(ca, id, cc) - kron(id, cb, cc);
}

/// 4 I - [a,a'][b,b'] - [a,a'][c,c'] - [b,b'][c,c'], each commutator pair
/// acting on its own two qubits: (1,2), (1,3), (2,3).
inline ComplexMatrix mermin_square_closed_form(const MerminSettings &s) {
    return mermin_square_closed_form(mermin_observables(s));
}

/// Per-particle commutator strengths |n x n'| of the effective directions.
inline std::array<double, 3> mermin_kappas(const MerminSettings &s) {
    const auto kappa = [](const UnitVector3 &u, const UnitVector3 &v,
                          const Boost &b) {
        return effective_direction(u, b)
            .vec()
            .cross(effective_direction(v, b).vec())
            .norm();
    };
    return {kappa(s.a, s.a_prime, s.boost1), kappa(s.b, s.b_prime, s.boost2),
            kappa(s.c, s.c_prime, s.boost3)};
}

/**
 * Largest eigenvalue of the squared three-qubit operator,
 * 4 (1 + k1 k2 + k1 k3 + k2 k3), valid when all directions and boosts are
 * coplanar in the xy-plane (every single-particle commutator is then
 * proportional to sigma_z).
 */
inline double mermin_lambda3(const MerminSettings &s) {
    for (const auto *v : {&s.a, &s.a_prime, &s.b, &s.b_prime, &s.c,
                          &s.c_prime}) {
        if (!detail::in_xy_plane(*v)) {
            throw DomainRestriction("directions must lie in the xy-plane");
        }
    }
    for (const auto *b : {&s.boost1, &s.boost2, &s.boost3}) {
        if (!detail::in_xy_plane(b->direction())) {
            throw DomainRestriction("boosts must lie in the xy-plane");
        }
    }
    const auto k = mermin_kappas(s);
    return 4.0 * (1.0 + k[0] * k[1] + k[0] * k[2] + k[1] * k[2]);
}

/// max |eigenvalue|: the largest |<B>| attainable over all states.
inline double max_violation(const ComplexMatrix &m) {
    const auto values = eigenvalues(m);
    return std::max(std::abs(values.front()), std::abs(values.back()));
}

} // namespace relbell
