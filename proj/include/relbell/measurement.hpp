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
 * Shot-level simulation of joint projective spin measurements and Bell
 * value estimators.
 *
 * Outcome tuples are indexed like computational basis states: particle i's
 * result is -1 when bit (n - 1 - i) of the index is set, so index 0 is the
 * all-plus outcome.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <future>
#include <span>
#include <string>
#include <vector>

#include "bell_operators.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "random.hpp"

namespace relbell {

class OutcomeDistribution {
  public:
    static constexpr double kClampTolerance = 1e-15;
    static constexpr double kSumTolerance = 1e-12;

    OutcomeDistribution(std::size_t n_particles, std::vector<double> probabilities)
        : n_(n_particles), p_(std::move(probabilities)) {
        if (n_ < 1 || n_ > 16 || p_.size() != (std::size_t{1} << n_)) {
            throw DimensionMismatch("expected 2^" + std::to_string(n_) +
                                    " probabilities, got " +
                                    std::to_string(p_.size()));
        }
        double sum = 0.0;
        for (auto &p : p_) {
            if (p < 0.0) {
                if (p < -kClampTolerance) {
                    throw Error("negative probability " + std::to_string(p));
                }
                p = 0.0;
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > kSumTolerance) {
            throw Error("probabilities sum to " + std::to_string(sum));
        }
    }

    [[nodiscard]] std::size_t n_particles() const noexcept { return n_; }
    [[nodiscard]] std::size_t outcomes() const noexcept { return p_.size(); }
    [[nodiscard]] std::span<const double> probabilities() const noexcept {
        return p_;
    }
    [[nodiscard]] double probability(std::size_t outcome) const {
        return p_.at(outcome);
    }

    /// Result (+1 or -1) of `particle` in outcome tuple `outcome`.
    [[nodiscard]] int sign(std::size_t outcome, std::size_t particle) const {
        return ((outcome >> (n_ - 1 - particle)) & 1u) ? -1 : 1;
    }

    /// Product of all results for an outcome tuple.
    [[nodiscard]] int parity(std::size_t outcome) const {
        return (std::popcount(outcome) & 1) ? -1 : 1;
    }

    /// Sum_s p(s) prod_i s_i.
    [[nodiscard]] double correlator() const {
        double acc = 0.0;
        for (std::size_t k = 0; k < p_.size(); ++k) {
            acc += parity(k) * p_[k];
        }
        return acc;
    }

    /// Probability that `particle` reads +1.
    [[nodiscard]] double marginal_plus(std::size_t particle) const {
        double acc = 0.0;
        for (std::size_t k = 0; k < p_.size(); ++k) {
            if (sign(k, particle) > 0) {
                acc += p_[k];
            }
        }
        return acc;
    }

  private:
    std::size_t n_;
    std::vector<double> p_;
};

namespace detail {

/// Apply a 2x2 operator to one qubit of a state vector in place.
inline void apply_single_qubit(std::vector<Complex> &v, std::size_t qubit,
                               std::size_t n_qubits, const ComplexMatrix &op) {
    const std::size_t stride = std::size_t{1} << (n_qubits - 1 - qubit);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i & stride) {
            continue;
        }
        const Complex v0 = v[i];
        const Complex v1 = v[i | stride];
        v[i] = op(0, 0) * v0 + op(0, 1) * v1;
        v[i | stride] = op(1, 0) * v0 + op(1, 1) * v1;
    }
}

inline void validate_dichotomic(const ComplexMatrix &o, std::size_t i) {
    const std::string who = "observable " + std::to_string(i);
    if (o.dim() != 2) {
        throw InvalidObservable(who + " is not 2x2");
    }
    if (!o.is_hermitian(1e-10)) {
        throw InvalidObservable(who + " is not Hermitian");
    }
    const auto ev = eigenvalues(o);
    if (std::abs(ev[0] + 1.0) > 1e-10 || std::abs(ev[1] - 1.0) > 1e-10) {
        throw InvalidObservable(who + " does not have spectrum {-1, +1}");
    }
}

} // namespace detail

/**
 * Outcome probabilities <psi| prod_i (I + s_i O_i) / 2 |psi> for measuring
 * observable O_i on particle i.
 */
inline OutcomeDistribution joint_distribution(const StateVector &state,
                                              std::span<const ComplexMatrix> observables) {
    const std::size_t n = observables.size();
    if (state.qubits() != n) {
        throw DimensionMismatch(std::to_string(n) + " observables for a " +
                                std::to_string(state.qubits()) + "-qubit state");
    }
    std::vector<ComplexMatrix> plus;
    std::vector<ComplexMatrix> minus;
    const ComplexMatrix id = pauli::identity();
    for (std::size_t i = 0; i < n; ++i) {
        detail::validate_dichotomic(observables[i], i);
        plus.push_back(0.5 * (id + observables[i]));
        minus.push_back(0.5 * (id - observables[i]));
    }
    const auto amps = state.amplitudes();
    std::vector<double> probs(std::size_t{1} << n);
    for (std::size_t k = 0; k < probs.size(); ++k) {
        std::vector<Complex> v(amps.begin(), amps.end());
        for (std::size_t i = 0; i < n; ++i) {
            const bool down = (k >> (n - 1 - i)) & 1u;
            detail::apply_single_qubit(v, i, n, down ? minus[i] : plus[i]);
        }
        double p = 0.0;
        for (const auto &a : v) {
            p += std::norm(a);
        }
        probs[k] = p;
    }
    return {n, std::move(probs)};
}

struct ShotRecord {
    int setting_label = 0;
    std::vector<std::uint64_t> counts;  ///< per outcome tuple
    std::uint64_t shots = 0;

    [[nodiscard]] double correlator() const {
        if (shots == 0) {
            throw Error("empty shot record");
        }
        double acc = 0.0;
        for (std::size_t k = 0; k < counts.size(); ++k) {
            const double s = (std::popcount(k) & 1) ? -1.0 : 1.0;
            acc += s * static_cast<double>(counts[k]);
        }
        return acc / static_cast<double>(shots);
    }
};

inline constexpr std::uint64_t kShotBlock = 1u << 16;

/**
 * Draw `shots` outcomes by inverse CDF. Block b of kShotBlock shots uses the
 * counter stream keyed by (seed, setting_label, b), so the result does not
 * depend on how blocks are scheduled.
 */
inline ShotRecord sample(const OutcomeDistribution &dist, std::uint64_t shots,
                         std::uint64_t seed, int setting_label = 0) {
    if (shots < 1) {
        throw DomainError("shots must be >= 1");
    }
    const auto p = dist.probabilities();
    std::vector<double> cdf(p.size());
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        acc += p[k];
        cdf[k] = acc;
        if (p[k] > 0.0) {
            last_nonzero = k;
        }
    }
    // Round-off must not leave u in [sum, 1) without an outcome.
    for (std::size_t k = last_nonzero; k < cdf.size(); ++k) {
        cdf[k] = 2.0;
    }

    const auto run_block = [&](std::uint64_t block) {
        std::vector<std::uint64_t> counts(p.size(), 0);
        const CounterRng rng(CounterRng::derive_key(
            seed, static_cast<std::uint64_t>(setting_label), block));
        const std::uint64_t begin = block * kShotBlock;
        const std::uint64_t end = std::min(shots, begin + kShotBlock);
        for (std::uint64_t i = 0; i < end - begin; ++i) {
            const double u = rng.uniform(i);
            const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            ++counts[static_cast<std::size_t>(it - cdf.begin())];
        }
        return counts;
    };

    const std::uint64_t blocks = (shots + kShotBlock - 1) / kShotBlock;
    ShotRecord rec{setting_label, std::vector<std::uint64_t>(p.size(), 0), shots};
    std::vector<std::future<std::vector<std::uint64_t>>> jobs;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        jobs.push_back(std::async(blocks > 1 ? std::launch::async
                                             : std::launch::deferred,
                                  run_block, b));
    }
    for (auto &j : jobs) {
        const auto counts = j.get();
        for (std::size_t k = 0; k < counts.size(); ++k) {
            rec.counts[k] += counts[k];
        }
    }
    return rec;
}

struct BellEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
};

/**
 * Sum_i sign_i E_i over empirical correlators, with standard error
 * sqrt(Sum_i (1 - E_i^2) / shots_i) from the plug-in binomial variance.
 * records must hold exactly one record for each setting label
 * 0 .. signs.size() - 1.
 */
inline BellEstimate estimate_bell(std::span<const ShotRecord> records,
                                  std::span<const int> signs) {
    if (signs.empty()) {
        throw MissingSetting("no settings");
    }
    std::vector<const ShotRecord *> by_label(signs.size(), nullptr);
    for (const auto &r : records) {
        if (r.setting_label < 0 ||
            static_cast<std::size_t>(r.setting_label) >= signs.size()) {
            throw MissingSetting("unexpected setting label " +
                                 std::to_string(r.setting_label));
        }
        if (by_label[r.setting_label] != nullptr) {
            throw MissingSetting("duplicate setting label " +
                                 std::to_string(r.setting_label));
        }
        by_label[r.setting_label] = &r;
    }
    BellEstimate out;
    double var = 0.0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (by_label[i] == nullptr) {
            throw MissingSetting("no record for setting " + std::to_string(i));
        }
        const double e = by_label[i]->correlator();
        out.estimate += signs[i] * e;
        var += (1.0 - e * e) / static_cast<double>(by_label[i]->shots);
    }
    out.standard_error = std::sqrt(var);
    return out;
}

/// Infinite-shot value Sum_i sign_i E_i from exact distributions.
inline double exact_bell(std::span<const OutcomeDistribution> dists,
                         std::span<const int> signs) {
    if (dists.size() != signs.size()) {
        throw MissingSetting("need one distribution per setting");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        acc += signs[i] * dists[i].correlator();
    }
    return acc;
}

/// One joint setting of a Bell experiment: which observable each particle
/// measures and the sign of its correlator in the Bell combination.
struct MeasurementTerm {
    std::string label;
    std::vector<ComplexMatrix> observables;
    int sign = 1;
};

/// E(a,b) + E(a,b') + E(a',b) - E(a',b').
inline std::vector<MeasurementTerm> chsh_terms(const ChshObservables &o) {
    return {{"a,b", {o.a, o.b}, 1},
            {"a,b'", {o.a, o.b_prime}, 1},
            {"a',b", {o.a_prime, o.b}, 1},
            {"a',b'", {o.a_prime, o.b_prime}, -1}};
}

/// E(a,b',c') + E(a',b,c') + E(a',b',c) - E(a,b,c).
inline std::vector<MeasurementTerm> mermin_terms(const MerminObservables &o) {
    return {{"a,b',c'", {o.a, o.b_prime, o.c_prime}, 1},
            {"a',b,c'", {o.a_prime, o.b, o.c_prime}, 1},
            {"a',b',c", {o.a_prime, o.b_prime, o.c}, 1},
            {"a,b,c", {o.a, o.b, o.c}, -1}};
}

inline std::vector<int> term_signs(const std::vector<MeasurementTerm> &terms) {
    std::vector<int> s;
    for (const auto &t : terms) {
        s.push_back(t.sign);
    }
    return s;
}

} // namespace relbell
