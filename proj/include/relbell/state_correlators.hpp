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
 * Canonical entangled states and closed-form correlators of boosted spin
 * observables on them. The matrix expectation value is always the ground
 * truth; the closed forms here are validators restricted to the geometry
 * they hold in (xy-plane directions, every particle boosted along x).
 */
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "spin_observable.hpp"

namespace relbell {

struct NamedState {
    std::string label;
    StateVector vector;
};

/// Computational basis state from a bitstring such as "001".
inline NamedState basis_state(std::string_view bits) {
    if (bits.empty() || bits.size() > 16) {
        throw DimensionMismatch("basis label must have 1..16 bits");
    }
    std::size_t index = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw Error("basis label '" + std::string(bits) +
                        "' is not a bitstring");
        }
        index = (index << 1) | static_cast<std::size_t>(ch == '1');
    }
    std::vector<Complex> amps(std::size_t{1} << bits.size());
    amps[index] = 1.0;
    return {"basis(" + std::string(bits) + ")", StateVector(std::move(amps))};
}

namespace detail {
inline NamedState cat_state(std::string label, std::size_t qubits,
                            double sign) {
    const std::size_t dim = std::size_t{1} << qubits;
    std::vector<Complex> amps(dim);
    amps.front() = 1.0 / std::numbers::sqrt2;
    amps.back() = sign / std::numbers::sqrt2;
    return {std::move(label), StateVector(std::move(amps))};
}
} // namespace detail

/// (|00> + |11>) / sqrt(2)
inline NamedState phi_plus() { return detail::cat_state("phi_plus", 2, 1.0); }

/// (|000> + |111>) / sqrt(2)
inline NamedState ghz_plus() { return detail::cat_state("ghz_plus", 3, 1.0); }

/// (|000> - |111>) / sqrt(2)
inline NamedState ghz_minus() {
    return detail::cat_state("ghz_minus", 3, -1.0);
}

namespace detail {
inline void require_plane(const UnitVector3 &v, const char *name) {
    if (std::abs(v.z()) > 1e-12) {
        throw DomainRestriction(std::string(name) +
                                " must lie in the xy-plane");
    }
}

inline void require_beta(double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw DomainError("beta = " + std::to_string(beta) +
                          " outside [0, 1]");
    }
}

inline double plane_norm(const UnitVector3 &v, double beta) {
    const double n2 = 1.0 + beta * beta * (v.x() * v.x() - 1.0);
    if (!(n2 > 0.0)) {
        throw DegenerateObservable("vanishing normalization at beta = " +
                                   std::to_string(beta));
    }
    return std::sqrt(n2);
}
} // namespace detail

/**
 * <phi+| a (x) b |phi+> for xy-plane directions, both particles boosted
 * along x:
 *
 *     [a_x b_x - (1 - beta^2) a_y b_y] / sqrt(N_a N_b)
 *
 * with N_v = 1 + beta^2 (v_x^2 - 1). Out-of-plane directions pick up a
 * (1 - beta^2) a_z b_z term and are rejected.
 */
inline double phi_plus_correlator_closed_form(const UnitVector3 &a,
                                              const UnitVector3 &b,
                                              double beta) {
    detail::require_plane(a, "a");
    detail::require_plane(b, "b");
    detail::require_beta(beta);
    const double g2 = 1.0 - beta * beta;
    return (a.x() * b.x() - g2 * a.y() * b.y()) /
           (detail::plane_norm(a, beta) * detail::plane_norm(b, beta));
}

/// <111| a (x) b (x) c |000> = prod_v (v_x + i sqrt(1-beta^2) v_y) / sqrt(N_v)
inline Complex ghz_offdiagonal_closed_form(const UnitVector3 &a,
                                           const UnitVector3 &b,
                                           const UnitVector3 &c, double beta) {
    detail::require_plane(a, "a");
    detail::require_plane(b, "b");
    detail::require_plane(c, "c");
    detail::require_beta(beta);
    const double g = std::sqrt((1.0 - beta) * (1.0 + beta));
    Complex out{1.0, 0.0};
    for (const UnitVector3 *v : {&a, &b, &c}) {
        out *= Complex{v->x(), g * v->y()} / detail::plane_norm(*v, beta);
    }
    return out;
}

/// <GHZ+| a (x) b (x) c |GHZ+> =
/// [a_x b_x c_x - (1-beta^2)(a_y b_x c_y + a_y b_y c_x + a_x b_y c_y)]
///     / sqrt(N_a N_b N_c)
inline double ghz_correlator_closed_form(const UnitVector3 &a,
                                         const UnitVector3 &b,
                                         const UnitVector3 &c, double beta) {
    detail::require_plane(a, "a");
    detail::require_plane(b, "b");
    detail::require_plane(c, "c");
    detail::require_beta(beta);
    const double g2 = 1.0 - beta * beta;
    const double numer =
        a.x() * b.x() * c.x() -
        g2 * (a.y() * b.x() * c.y() + a.y() * b.y() * c.x() +
              a.x() * b.y() * c.y());
    return numer / (detail::plane_norm(a, beta) * detail::plane_norm(b, beta) *
                    detail::plane_norm(c, beta));
}

} // namespace relbell
