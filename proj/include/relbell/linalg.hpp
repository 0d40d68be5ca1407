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
 * Small dense complex linear algebra: matrices, state vectors, Kronecker
 * products, a cyclic Jacobi eigensolver for Hermitian matrices and
 * expectation values.
 *
 * Everything here is sized for a handful of qubits (dimension <= 8). No
 * attempt is made at blocking or vectorization.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace relbell {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/**
 * Square complex matrix stored row-major.
 */
class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    /// Zero matrix of the given dimension.
    explicit ComplexMatrix(std::size_t dim)
        : dim_(dim), data_(dim * dim, Complex{0.0, 0.0}) {}

    /// Row-major entries; the count must be a perfect square.
    ComplexMatrix(std::initializer_list<Complex> entries)
        : data_(entries) {
        dim_ = static_cast<std::size_t>(
            std::llround(std::sqrt(static_cast<double>(data_.size()))));
        if (dim_ * dim_ != data_.size()) {
            throw DimensionMismatch("entry count " +
                                    std::to_string(data_.size()) +
                                    " is not a perfect square");
        }
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> values) {
        ComplexMatrix m(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            m(i, i) = values[i];
        }
        return m;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

    Complex &operator()(std::size_t row, std::size_t col) {
        return data_[row * dim_ + col];
    }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return data_[row * dim_ + col];
    }

    [[nodiscard]] std::span<const Complex> entries() const noexcept {
        return data_;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &rhs) {
        check_same_dim(rhs);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] += rhs.data_[i];
        }
        return *this;
    }

    ComplexMatrix &operator-=(const ComplexMatrix &rhs) {
        check_same_dim(rhs);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] -= rhs.data_[i];
        }
        return *this;
    }

    ComplexMatrix &operator*=(Complex scale) {
        for (auto &x : data_) {
            x *= scale;
        }
        return *this;
    }

    [[nodiscard]] ComplexMatrix adjoint() const {
        ComplexMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    [[nodiscard]] Complex trace() const {
        Complex t{0.0, 0.0};
        for (std::size_t i = 0; i < dim_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    /// Largest entrywise deviation from the conjugate transpose.
    [[nodiscard]] double hermiticity_defect() const {
        double worst = 0.0;
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = r; c < dim_; ++c) {
                worst = std::max(
                    worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
            }
        }
        return worst;
    }

    [[nodiscard]] bool is_hermitian(double tol) const {
        return hermiticity_defect() <= tol;
    }

    [[nodiscard]] bool is_identity(double tol) const {
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                const Complex expected = (r == c) ? 1.0 : 0.0;
                if (std::abs((*this)(r, c) - expected) > tol) {
                    return false;
                }
            }
        }
        return true;
    }

    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) =
        default;

  private:
    void check_same_dim(const ComplexMatrix &rhs) const {
        if (rhs.dim_ != dim_) {
            throw DimensionMismatch(std::to_string(dim_) + " vs " +
                                    std::to_string(rhs.dim_));
        }
    }

    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

inline ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs) {
    return lhs += rhs;
}
inline ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs) {
    return lhs -= rhs;
}
inline ComplexMatrix operator*(Complex scale, ComplexMatrix m) {
    return m *= scale;
}
inline ComplexMatrix operator*(ComplexMatrix m, Complex scale) {
    return m *= scale;
}

inline ComplexMatrix operator*(const ComplexMatrix &lhs,
                               const ComplexMatrix &rhs) {
    if (lhs.dim() != rhs.dim()) {
        throw DimensionMismatch("matrix product " + std::to_string(lhs.dim()) +
                                " x " + std::to_string(rhs.dim()));
    }
    const std::size_t n = lhs.dim();
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex l = lhs(r, k);
            if (l == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += l * rhs(k, c);
            }
        }
    }
    return out;
}

inline ComplexMatrix commutator(const ComplexMatrix &a,
                                const ComplexMatrix &b) {
    return a * b - b * a;
}

/// Standard Kronecker product; no cap on the resulting dimension.
inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t ar = 0; ar < na; ++ar) {
        for (std::size_t ac = 0; ac < na; ++ac) {
            const Complex s = a(ar, ac);
            for (std::size_t br = 0; br < nb; ++br) {
                for (std::size_t bc = 0; bc < nb; ++bc) {
                    out(ar * nb + br, ac * nb + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b,
                          const ComplexMatrix &c) {
    return kron(kron(a, b), c);
}

/// Largest entrywise |a - b|.
inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("max_abs_diff " + std::to_string(a.dim()) +
                                " vs " + std::to_string(b.dim()));
    }
    double worst = 0.0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        worst = std::max(worst, std::abs(ea[i] - eb[i]));
    }
    return worst;
}

/// Pauli matrices and the 2x2 identity.
namespace pauli {
inline ComplexMatrix identity() { return ComplexMatrix::identity(2); }
inline ComplexMatrix x() { return {0.0, 1.0, 1.0, 0.0}; }
inline ComplexMatrix y() { return {0.0, -kI, kI, 0.0}; }
inline ComplexMatrix z() { return {1.0, 0.0, 0.0, -1.0}; }
} // namespace pauli

/**
 * Normalized pure state over 2^n computational basis states. Basis index
 * bits are read most-significant first, so |01> is index 1 and qubit 0 is
 * the leftmost tensor factor.
 */
class StateVector {
  public:
    static constexpr double kNormTolerance = 1e-12;

    explicit StateVector(std::vector<Complex> amplitudes)
        : amplitudes_(std::move(amplitudes)) {
        const std::size_t n = amplitudes_.size();
        if (n < 2 || (n & (n - 1)) != 0) {
            throw DimensionMismatch("state dimension " + std::to_string(n) +
                                    " is not a power of two");
        }
        double norm2 = 0.0;
        for (const auto &a : amplitudes_) {
            norm2 += std::norm(a);
        }
        if (std::abs(norm2 - 1.0) > kNormTolerance) {
            throw Error("state is not normalized (norm^2 = " +
                        std::to_string(norm2) + ")");
        }
    }

    [[nodiscard]] std::size_t dim() const noexcept {
        return amplitudes_.size();
    }

    [[nodiscard]] std::size_t qubits() const noexcept {
        return static_cast<std::size_t>(std::countr_zero(amplitudes_.size()));
    }

    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }

    const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }

  private:
    std::vector<Complex> amplitudes_;
};

inline std::vector<Complex> apply_operator(const ComplexMatrix &m,
                                  std::span<const Complex> v) {
    if (m.dim() != v.size()) {
        throw DimensionMismatch("operator " + std::to_string(m.dim()) +
                                " on vector " + std::to_string(v.size()));
    }
    std::vector<Complex> out(v.size());
    for (std::size_t r = 0; r < m.dim(); ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < m.dim(); ++c) {
            acc += m(r, c) * v[c];
        }
        out[r] = acc;
    }
    return out;
}

inline Complex inner(std::span<const Complex> lhs,
                     std::span<const Complex> rhs) {
    if (lhs.size() != rhs.size()) {
        throw DimensionMismatch("inner product " + std::to_string(lhs.size()) +
                                " vs " + std::to_string(rhs.size()));
    }
    Complex acc{};
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        acc += std::conj(lhs[i]) * rhs[i];
    }
    return acc;
}

/// Matrix element <lhs|m|rhs>.
inline Complex matrix_element(std::span<const Complex> lhs,
                              const ComplexMatrix &m,
                              std::span<const Complex> rhs) {
    return inner(lhs, apply_operator(m, rhs));
}

/**
 * <s|M|s> for Hermitian M. The imaginary part of the raw inner product must
 * be below 1e-12; anything larger means M was not Hermitian.
 */
inline double expectation(const StateVector &s, const ComplexMatrix &m) {
    if (s.dim() != m.dim()) {
        throw DimensionMismatch("state " + std::to_string(s.dim()) +
                                " with operator " + std::to_string(m.dim()));
    }
    const Complex value = matrix_element(s.amplitudes(), m, s.amplitudes());
    if (std::abs(value.imag()) >= 1e-12) {
        throw NotHermitian("expectation has imaginary part " +
                           std::to_string(value.imag()));
    }
    return value.real();
}

struct EigenSystem {
    std::vector<double> values;  ///< ascending
    ComplexMatrix vectors;       ///< column k pairs with values[k]

    [[nodiscard]] std::vector<Complex> vector(std::size_t k) const {
        std::vector<Complex> v(vectors.dim());
        for (std::size_t r = 0; r < v.size(); ++r) {
            v[r] = vectors(r, k);
        }
        return v;
    }
};

struct JacobiOptions {
    /// Stop once the off-diagonal Frobenius norm drops below this times
    /// max(1, Frobenius norm of the input).
    double off_diagonal_tolerance = 1e-14;
    int max_sweeps = 100;
    double hermitian_tolerance = 1e-10;
};

namespace detail {
inline double off_diagonal_norm(const ComplexMatrix &a) {
    double acc = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t c = 0; c < a.dim(); ++c) {
            if (r != c) {
                acc += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(acc);
}
} // namespace detail

/**
 * Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
 * rotations. Eigenvalues come back ascending; eigenvectors are the
 * orthonormal columns of `vectors`. Within a degenerate eigenspace the basis
 * is arbitrary.
 */
inline EigenSystem hermitian_eigensystem(const ComplexMatrix &m,
                                         const JacobiOptions &opts = {}) {
    const std::size_t n = m.dim();
    const double defect = m.hermiticity_defect();
    if (defect > opts.hermitian_tolerance) {
        throw NotHermitian("defect " + std::to_string(defect));
    }

    // Symmetrize so round-off in the input cannot bias the rotations.
    ComplexMatrix a(n);
    double frob = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
            frob += std::norm(a(r, c));
        }
        a(r, r) = a(r, r).real();
    }
    const double threshold =
        opts.off_diagonal_tolerance * std::max(1.0, std::sqrt(frob));
    ComplexMatrix v = ComplexMatrix::identity(n);

    int sweep = 0;
    while (detail::off_diagonal_norm(a) >= threshold) {
        if (sweep++ >= opts.max_sweeps) {
            throw NoConvergence("Jacobi exceeded " +
                                std::to_string(opts.max_sweeps) + " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double g = std::abs(apq);
                if (g == 0.0) {
                    continue;
                }
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const Complex phase = apq / g;

                // Real rotation that annihilates g in [[app, g], [g, aqq]].
                const double zeta = (aqq - app) / (2.0 * g);
                const double t =
                    (zeta >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;

                // U = diag(1, conj(phase)) * [[c, s], [-s, c]] on (p, q).
                const Complex upp = cs;
                const Complex upq = sn;
                const Complex uqp = -sn * std::conj(phase);
                const Complex uqq = cs * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = app - t * g;
                a(q, q) = aqq + t * g;

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * upp + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * uqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) {
                         return a(i, i).real() < a(j, j).real();
                     });

    EigenSystem out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

inline std::vector<double> eigenvalues(const ComplexMatrix &m) {
    return hermitian_eigensystem(m).values;
}

} // namespace relbell
