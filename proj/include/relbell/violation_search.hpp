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
 * Derivative-free maximization of Bell violation over measurement
 * directions at fixed boosts.
 *
 * Each restart starts from a jittered grid point and runs coordinate-wise
 * ascent: a coarse scan of the current angle over `grid_points_per_angle`
 * offsets, then golden-section refinement in the bracket around the best
 * offset. Sweeps stop once a full pass improves the objective by less than
 * `refinement_tolerance`. Restarts are independent; the best value wins and
 * ties go to the lowest restart index.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bell_operators.hpp"
#include "errors.hpp"
#include "random.hpp"
#include "spin_observable.hpp"
#include "state_correlators.hpp"

namespace relbell {

enum class Constraint { xy_plane, free_sphere };

enum class Objective {
    operator_norm,     ///< max |eigenvalue| of the Bell operator
    state_expectation  ///< |<psi|B|psi>| for phi+ (two qubits) or GHZ+
};

struct SearchConfig {
    Constraint constraint = Constraint::xy_plane;
    int restarts = 16;
    int grid_points_per_angle = 24;
    double refinement_tolerance = 1e-8;
    std::uint64_t seed = 0;
    Objective objective = Objective::operator_norm;
    /// Bit i freezes direction i (a, a', b, b', c, c' order) at its anchor
    /// value.
    std::uint32_t frozen_mask = 0;
    int max_sweeps = 200;
    bool parallel = true;

    void validate() const {
        if (restarts < 1) {
            throw DomainError("restarts must be >= 1");
        }
        if (grid_points_per_angle < 1) {
            throw DomainError("grid_points_per_angle must be >= 1");
        }
        if (!(refinement_tolerance > 0.0)) {
            throw DomainError("refinement_tolerance must be positive");
        }
        if (max_sweeps < 1) {
            throw DomainError("max_sweeps must be >= 1");
        }
    }
};

template <class Settings> struct SearchResult {
    Settings settings;
    double value = 0.0;
    int best_restart = 0;
};

namespace detail {

template <std::size_t N> using Directions = std::array<UnitVector3, N>;

struct Coordinate {
    std::size_t direction;
    bool polar;  ///< theta (free sphere) rather than the azimuth phi
};

template <std::size_t N> struct AngleLayout {
    std::vector<Coordinate> coords;

    AngleLayout(Constraint constraint, std::uint32_t frozen) {
        for (std::size_t d = 0; d < N; ++d) {
            if (frozen & (1u << d)) {
                continue;
            }
            if (constraint == Constraint::free_sphere) {
                coords.push_back({d, true});
            }
            coords.push_back({d, false});
        }
    }

    [[nodiscard]] static double period(const Coordinate &c) {
        return c.polar ? std::numbers::pi : 2.0 * std::numbers::pi;
    }

    [[nodiscard]] Directions<N> directions(const Directions<N> &base,
                                           Constraint constraint,
                                           const std::vector<double> &p) const {
        Directions<N> out = base;
        for (std::size_t j = 0; j < coords.size(); ++j) {
            const auto &c = coords[j];
            if (constraint == Constraint::xy_plane) {
                out[c.direction] = UnitVector3::in_plane(p[j]);
            } else if (c.polar) {
                // theta at j, phi at j + 1
                out[c.direction] = UnitVector3::spherical(p[j], p[j + 1]);
            }
        }
        return out;
    }

    [[nodiscard]] std::vector<double> angles_of(const Directions<N> &dirs) const {
        std::vector<double> p(coords.size());
        for (std::size_t j = 0; j < coords.size(); ++j) {
            const UnitVector3 &v = dirs[coords[j].direction];
            p[j] = coords[j].polar ? std::acos(std::clamp(v.z(), -1.0, 1.0))
                                   : v.azimuth();
        }
        return p;
    }
};

/// Maximize f on [lo, hi]; returns the best point evaluated.
template <class F>
std::pair<double, double> golden_maximize(F &&f, double lo, double hi,
                                          double x_tol = 1e-10,
                                          int max_iter = 200) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    double best_x = fc >= fd ? c : d;
    double best_f = std::max(fc, fd);
    for (int it = 0; it < max_iter && (hi - lo) > x_tol; ++it) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
            if (fc > best_f) {
                best_f = fc;
                best_x = c;
            }
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
            if (fd > best_f) {
                best_f = fd;
                best_x = d;
            }
        }
    }
    return {best_x, best_f};
}

template <std::size_t N>
std::pair<Directions<N>, double>
run_restart(const std::function<double(const Directions<N> &)> &objective,
            const Directions<N> &base, bool from_anchor,
            const SearchConfig &cfg, int restart) {
    const AngleLayout<N> layout(cfg.constraint, cfg.frozen_mask);
    const std::size_t m = layout.coords.size();
    const int grid = cfg.grid_points_per_angle;

    std::vector<double> p;
    if (restart == 0 && from_anchor) {
        p = layout.angles_of(base);
    } else {
        const CounterRng rng(CounterRng::derive_key(
            cfg.seed, static_cast<std::uint64_t>(restart)));
        p.resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            const double h = AngleLayout<N>::period(layout.coords[j]) / grid;
            const auto k = static_cast<int>(rng.uniform(2 * j) * grid);
            const double jitter = restart == 0 ? 0.0 : rng.uniform(2 * j + 1);
            p[j] = (k + jitter) * h;
        }
    }

    const auto eval = [&](const std::vector<double> &q) {
        return objective(layout.directions(base, cfg.constraint, q));
    };
    double f = eval(p);
    for (int sweep = 0; sweep < cfg.max_sweeps && m > 0; ++sweep) {
        const double f_start = f;
        for (std::size_t j = 0; j < m; ++j) {
            const double h = AngleLayout<N>::period(layout.coords[j]) / grid;
            const double x0 = p[j];
            double best_x = x0;
            double best_f = f;
            std::vector<double> q = p;
            for (int k = 1; k < grid; ++k) {
                q[j] = x0 + k * h;
                const double v = eval(q);
                if (v > best_f) {
                    best_f = v;
                    best_x = q[j];
                }
            }
            const auto [gx, gf] = golden_maximize(
                [&](double x) {
                    q[j] = x;
                    return eval(q);
                },
                best_x - h, best_x + h);
            if (gf > best_f) {
                best_f = gf;
                best_x = gx;
            }
            p[j] = best_x;
            f = best_f;
        }
        if (f - f_start < cfg.refinement_tolerance) {
            break;
        }
    }
    return {layout.directions(base, cfg.constraint, p), f};
}

template <std::size_t N>
std::pair<Directions<N>, std::pair<double, int>>
search(const std::function<double(const Directions<N> &)> &objective,
       const Directions<N> &base, bool from_anchor, const SearchConfig &cfg) {
    cfg.validate();
    std::vector<std::pair<Directions<N>, double>> results;
    results.reserve(static_cast<std::size_t>(cfg.restarts));
    if (cfg.parallel && cfg.restarts > 1) {
        std::vector<std::future<std::pair<Directions<N>, double>>> jobs;
        for (int r = 0; r < cfg.restarts; ++r) {
            jobs.push_back(std::async(std::launch::async, [&, r] {
                return run_restart<N>(objective, base, from_anchor, cfg, r);
            }));
        }
        for (auto &j : jobs) {
            results.push_back(j.get());
        }
    } else {
        for (int r = 0; r < cfg.restarts; ++r) {
            results.push_back(run_restart<N>(objective, base, from_anchor, cfg, r));
        }
    }
    int best = 0;
    for (int r = 1; r < cfg.restarts; ++r) {
        if (results[r].second > results[best].second) {
            best = r;
        }
    }
    return {results[best].first, {results[best].second, best}};
}

inline void require_search_beta(double beta) {
    if (!(beta >= 0.0 && beta < 1.0)) {
        throw DomainError("search needs 0 <= beta < 1, got " +
                          std::to_string(beta));
    }
}

} // namespace detail

/**
 * Maximize the CHSH objective over a, a', b, b' with particle i boosted
 * along boost_directions[i] at speed beta. `anchor` supplies the values of
 * frozen directions and the start of restart 0.
 */
inline SearchResult<ChshSettings>
optimize_chsh(const std::array<UnitVector3, 2> &boost_directions, double beta,
              const SearchConfig &cfg,
              const std::optional<ChshSettings> &anchor = std::nullopt) {
    detail::require_search_beta(beta);
    if (cfg.frozen_mask != 0 && !anchor) {
        throw DomainError("frozen directions need an anchor");
    }
    const Boost b1(boost_directions[0], beta);
    const Boost b2(boost_directions[1], beta);
    const auto x = UnitVector3::unit_x();
    detail::Directions<4> base{x, x, x, x};
    if (anchor) {
        base = {anchor->a, anchor->a_prime, anchor->b, anchor->b_prime};
    }
    const auto make = [&](const detail::Directions<4> &d) {
        return ChshSettings{d[0], d[1], d[2], d[3], b1, b2};
    };
    const StateVector psi = phi_plus().vector;
    const std::function<double(const detail::Directions<4> &)> objective =
        [&](const detail::Directions<4> &d) {
            const ComplexMatrix op = chsh_operator(make(d));
            return cfg.objective == Objective::operator_norm
                       ? max_violation(op)
                       : std::abs(expectation(psi, op));
        };
    const auto [dirs, best] =
        detail::search<4>(objective, base, anchor.has_value(), cfg);
    return {make(dirs), best.first, best.second};
}

/// Three-qubit counterpart of optimize_chsh over a, a', b, b', c, c'.
inline SearchResult<MerminSettings>
optimize_mermin(const std::array<UnitVector3, 3> &boost_directions, double beta,
                const SearchConfig &cfg,
                const std::optional<MerminSettings> &anchor = std::nullopt) {
    detail::require_search_beta(beta);
    if (cfg.frozen_mask != 0 && !anchor) {
        throw DomainError("frozen directions need an anchor");
    }
    const Boost b1(boost_directions[0], beta);
    const Boost b2(boost_directions[1], beta);
    const Boost b3(boost_directions[2], beta);
    const auto x = UnitVector3::unit_x();
    detail::Directions<6> base{x, x, x, x, x, x};
    if (anchor) {
        base = {anchor->a, anchor->a_prime, anchor->b,
                anchor->b_prime, anchor->c, anchor->c_prime};
    }
    const auto make = [&](const detail::Directions<6> &d) {
        return MerminSettings{d[0], d[1], d[2], d[3], d[4], d[5], b1, b2, b3};
    };
    const StateVector psi = ghz_plus().vector;
    const std::function<double(const detail::Directions<6> &)> objective =
        [&](const detail::Directions<6> &d) {
            const ComplexMatrix op = mermin_operator(make(d));
            return cfg.objective == Objective::operator_norm
                       ? max_violation(op)
                       : std::abs(expectation(psi, op));
        };
    const auto [dirs, best] =
        detail::search<6>(objective, base, anchor.has_value(), cfg);
    return {make(dirs), best.first, best.second};
}

} // namespace relbell
