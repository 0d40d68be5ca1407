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
 * Named measurement configurations and their closed-form violation curves.
 *
 *  - chsh_collinear: both particles boosted along x, directions
 *    a = (1,-1)/sqrt2, a' = (-1,-1)/sqrt2, b = y, b' = x.
 *  - mermin_collinear: all three boosted along x, a = b = c = y,
 *    a' = b' = c' = x.
 *  - mermin_center_of_mass: same directions, particles emitted in a plane at
 *    mutual angles 2 pi / 3 (boost directions -x, x/2 + sqrt3 y/2,
 *    x/2 - sqrt3 y/2).
 *
 * Angles, where they appear, are azimuths measured from the x-axis.
 */
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bell_operators.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "spin_observable.hpp"
#include "state_correlators.hpp"

namespace relbell {

namespace detail {
inline void require_unit_interval(double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw DomainError("beta = " + std::to_string(beta) +
                          " outside [0, 1]");
    }
}
inline double inverse_gamma(double beta) {
    return std::sqrt((1.0 - beta) * (1.0 + beta));
}
} // namespace detail

/// Largest CHSH value for the collinear reference settings:
/// 2 (1 + sqrt(1 - beta^2)) / sqrt(2 - beta^2). Runs from 2 sqrt2 to 2.
inline double epsilon2(double beta) {
    detail::require_unit_interval(beta);
    return 2.0 * (1.0 + detail::inverse_gamma(beta)) / std::sqrt(2.0 - beta * beta);
}

/// Largest eigenvalue of the squared three-qubit operator in the
/// center-of-mass geometry:
/// 4 (1 + 8 g / sqrt(P) + 16 g^2 / P), g = sqrt(1 - beta^2),
/// P = (4 - beta^2)(4 - 3 beta^2).
inline double lambda_com(double beta) {
    detail::require_unit_interval(beta);
    const double g = detail::inverse_gamma(beta);
    const double p = (4.0 - beta * beta) * (4.0 - 3.0 * beta * beta);
    return 4.0 * (1.0 + 8.0 * g / std::sqrt(p) + 16.0 * g * g / p);
}

/// 2 (1 + 4 g / sqrt(P)); the square root of lambda_com. Runs from 4 to 2.
inline double epsilon3_com(double beta) {
    detail::require_unit_interval(beta);
    const double g = detail::inverse_gamma(beta);
    const double p = (4.0 - beta * beta) * (4.0 - 3.0 * beta * beta);
    return 2.0 * (1.0 + 4.0 * g / std::sqrt(p));
}

/// Largest three-qubit value for the reference directions under a common
/// x-axis boost. x and y are both fixed points of that boost, so every
/// particle keeps a unit commutator and the value is 4 for all beta.
inline double epsilon3_collinear(double beta) {
    detail::require_unit_interval(beta);
    return 4.0;
}

/// Boost directions of three particles emitted at mutual angles 2 pi / 3.
inline std::array<UnitVector3, 3> com_boosts() {
    const double h = std::numbers::sqrt3 / 2.0;
    return {UnitVector3{-1.0, 0.0, 0.0}, UnitVector3::normalized(0.5, h, 0.0),
            UnitVector3::normalized(0.5, -h, 0.0)};
}

inline ChshSettings chsh_reference_settings(double beta) {
    const double r = 1.0 / std::numbers::sqrt2;
    return {UnitVector3::normalized(r, -r, 0.0),
            UnitVector3::normalized(-r, -r, 0.0),
            UnitVector3::unit_y(),
            UnitVector3::unit_x(),
            Boost::along_x(beta),
            Boost::along_x(beta)};
}

/// a = b = c = y, a' = b' = c' = x (or the reverse when prime_swap).
inline MerminSettings mermin_reference_settings(const std::array<Boost, 3> &boosts,
                                                bool prime_swap = false) {
    const auto y = UnitVector3::unit_y();
    const auto x = UnitVector3::unit_x();
    MerminSettings s{y, x, y, x, y, x, boosts[0], boosts[1], boosts[2]};
    return prime_swap ? s.primes_swapped() : s;
}

inline MerminSettings mermin_collinear_settings(double beta,
                                                bool prime_swap = false) {
    const Boost b = Boost::along_x(beta);
    return mermin_reference_settings({b, b, b}, prime_swap);
}

inline MerminSettings mermin_com_settings(double beta, bool prime_swap = false) {
    const auto e = com_boosts();
    return mermin_reference_settings(
        {Boost(e[0], beta), Boost(e[1], beta), Boost(e[2], beta)}, prime_swap);
}

/// Effective directions of the reference settings in the center-of-mass
/// geometry, with the comparison against two closed-form candidates for the
/// primed directions of particles 2 and 3.
struct ComSettingObservables {
    std::array<UnitVector3, 6> directions;  ///< a, a', b, b', c, c'
    /// Particles 2 and 3 unprimed vs
    /// ((3 + g) y +- sqrt3 (1 - g) x) / (2 sqrt(4 - beta^2)).
    double unprimed_residual = 0.0;
    /// Primed vs ((1 + 3g) x +- sqrt3 (1 - g) y) / (2 sqrt(4 - 3 beta^2)).
    double primed_derived_residual = 0.0;
    /// Primed vs the same with numerator (3 + g) x, which is not unit length
    /// for beta > 0.
    double primed_alternative_residual = 0.0;
    double primed_alternative_norm_deviation = 0.0;
};

namespace detail {
inline double component_residual(const UnitVector3 &u, const Vec3 &v) {
    return std::max({std::abs(u.x() - v.x), std::abs(u.y() - v.y),
                     std::abs(u.z() - v.z)});
}
} // namespace detail

inline ComSettingObservables com_setting_observables(double beta) {
    detail::require_unit_interval(beta);
    if (beta >= 1.0) {
        throw DomainError("center-of-mass observables need beta < 1");
    }
    const MerminSettings s = mermin_com_settings(beta);
    ComSettingObservables out{
        {effective_direction(s.a, s.boost1),
         effective_direction(s.a_prime, s.boost1),
         effective_direction(s.b, s.boost2),
         effective_direction(s.b_prime, s.boost2),
         effective_direction(s.c, s.boost3),
         effective_direction(s.c_prime, s.boost3)}};

    const double g = detail::inverse_gamma(beta);
    const double s3 = std::numbers::sqrt3;
    const double du = 2.0 * std::sqrt(4.0 - beta * beta);
    const double dp = 2.0 * std::sqrt(4.0 - 3.0 * beta * beta);
    const Vec3 b_closed{s3 * (1.0 - g) / du, (3.0 + g) / du, 0.0};
    const Vec3 c_closed{-s3 * (1.0 - g) / du, (3.0 + g) / du, 0.0};
    const Vec3 bp_derived{(1.0 + 3.0 * g) / dp, s3 * (1.0 - g) / dp, 0.0};
    const Vec3 cp_derived{(1.0 + 3.0 * g) / dp, -s3 * (1.0 - g) / dp, 0.0};
    const Vec3 bp_alt{(3.0 + g) / dp, s3 * (1.0 - g) / dp, 0.0};
    const Vec3 cp_alt{(3.0 + g) / dp, -s3 * (1.0 - g) / dp, 0.0};

    out.unprimed_residual =
        std::max(detail::component_residual(out.directions[2], b_closed),
                 detail::component_residual(out.directions[4], c_closed));
    out.primed_derived_residual =
        std::max(detail::component_residual(out.directions[3], bp_derived),
                 detail::component_residual(out.directions[5], cp_derived));
    out.primed_alternative_residual =
        std::max(detail::component_residual(out.directions[3], bp_alt),
                 detail::component_residual(out.directions[5], cp_alt));
    out.primed_alternative_norm_deviation =
        std::max(std::abs(bp_alt.norm() - 1.0), std::abs(cp_alt.norm() - 1.0));
    return out;
}

enum class ScenarioKind { chsh_collinear, mermin_collinear, mermin_center_of_mass };

inline std::string_view to_string(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::chsh_collinear:
        return "chsh-collinear";
    case ScenarioKind::mermin_collinear:
        return "mermin-collinear";
    case ScenarioKind::mermin_center_of_mass:
        return "mermin-com";
    }
    return "unknown";
}

inline std::optional<ScenarioKind> parse_scenario_kind(std::string_view name) {
    for (auto k : {ScenarioKind::chsh_collinear, ScenarioKind::mermin_collinear,
                   ScenarioKind::mermin_center_of_mass}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

struct Scenario {
    ScenarioKind kind = ScenarioKind::chsh_collinear;
    double beta = 0.0;
    bool prime_swap = false;
};

/// One sample of a violation curve. Numeric fields are empty at beta = 1,
/// where only the closed form is defined.
struct ScenarioResult {
    double beta = 0.0;
    double closed_form = 0.0;
    std::optional<double> numeric_max;
    std::optional<double> state_expectation;
    std::optional<double> closed_vs_numeric;
    std::optional<double> closed_vs_state;
    std::optional<double> numeric_vs_state;
};

/// Fill the numeric fields of `r` from an assembled operator and the state
/// whose expectation value is reported.
inline void attach_numerics(ScenarioResult &r, const ComplexMatrix &op,
                            const StateVector &state) {
    r.numeric_max = max_violation(op);
    r.state_expectation = expectation(state, op);
    r.closed_vs_numeric = std::abs(r.closed_form - *r.numeric_max);
    r.closed_vs_state = std::abs(r.closed_form - std::abs(*r.state_expectation));
    r.numeric_vs_state =
        std::abs(*r.numeric_max - std::abs(*r.state_expectation));
}

inline ChshSettings scenario_chsh_settings(const Scenario &s) {
    ChshSettings c = chsh_reference_settings(s.beta);
    if (s.prime_swap) {
        std::swap(c.a, c.a_prime);
        std::swap(c.b, c.b_prime);
    }
    return c;
}

inline MerminSettings scenario_mermin_settings(const Scenario &s) {
    return s.kind == ScenarioKind::mermin_center_of_mass
               ? mermin_com_settings(s.beta, s.prime_swap)
               : mermin_collinear_settings(s.beta, s.prime_swap);
}

/// Closed form, numeric operator norm and entangled-state expectation for
/// a named scenario. The CHSH scenarios report the phi+ expectation, the
/// three-qubit ones the GHZ+ expectation.
inline ScenarioResult scenario_curve(const Scenario &s) {
    detail::require_unit_interval(s.beta);
    ScenarioResult r;
    r.beta = s.beta;
    switch (s.kind) {
    case ScenarioKind::chsh_collinear:
        r.closed_form = epsilon2(s.beta);
        break;
    case ScenarioKind::mermin_collinear:
        r.closed_form = epsilon3_collinear(s.beta);
        break;
    case ScenarioKind::mermin_center_of_mass:
        r.closed_form = epsilon3_com(s.beta);
        break;
    }
    if (s.beta >= 1.0) {
        return r;
    }
    if (s.kind == ScenarioKind::chsh_collinear) {
        attach_numerics(r, chsh_operator(scenario_chsh_settings(s)),
                        phi_plus().vector);
    } else {
        attach_numerics(r, mermin_operator(scenario_mermin_settings(s)),
                        ghz_plus().vector);
    }
    return r;
}

/// beta_min, beta_min + step, ... up to beta_max; beta_max itself is
/// included when the grid lands within 1e-9 of it.
inline std::vector<double> beta_grid(double beta_min, double beta_max,
                                     double step) {
    if (!(beta_min >= 0.0 && beta_min <= beta_max && beta_max <= 1.0)) {
        throw DomainError("need 0 <= beta_min <= beta_max <= 1");
    }
    if (!(step > 0.0)) {
        throw DomainError("beta step must be positive");
    }
    std::vector<double> grid;
    for (std::size_t k = 0;; ++k) {
        double b = beta_min + static_cast<double>(k) * step;
        if (b > beta_max + 1e-9) {
            break;
        }
        if (std::abs(b - beta_max) <= 1e-9) {
            b = beta_max;
        }
        grid.push_back(b);
    }
    return grid;
}

} // namespace relbell
