// Copyright 2026 The Mereo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEREO_LINALG_HPP
#define MEREO_LINALG_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace mereo {

using Complex = std::complex<double>;

/// Thrown when operand shapes do not fit the requested operation.
class DimensionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a value fails one of its type invariants (non-Hermitian
/// projector, non-normalized Gamma, ...).
class InvariantViolation : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Numerical thresholds shared by every module. Verdicts are discrete, so the
/// same numbers must be used everywhere and echoed into reports.
struct Tolerances {
    double herm = 1e-9;     ///< ||A - A^dag||_F accepted as Hermitian.
    double recon = 1e-9;    ///< factorization / idempotency residuals.
    double rank = 1e-7;     ///< singular values above this count as nonzero.
    double compat = 1e-9;   ///< commutator norms below this count as commuting.
    double support = 1e-9;  ///< support-inclusion residuals.
};

inline const Tolerances &default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

/// Dense row-major complex matrix. Column vectors are n x 1 matrices.
class ComplexMatrix {
   public:
    /// Zero matrix of the given shape; both extents must be positive.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Takes ownership of row-major entries; rejects NaN/Inf and size mismatch.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> diag);
    static ComplexMatrix diagonal(std::initializer_list<Complex> diag);
    static ComplexMatrix column(std::span<const Complex> values);
    static ComplexMatrix column(std::initializer_list<Complex> values);
    /// Canonical basis vector |index> in dimension n.
    static ComplexMatrix basis_vector(std::size_t n, std::size_t index);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool is_square() const { return rows_ == cols_; }

    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const { return data_; }
    std::span<Complex> entries() { return data_; }

    /// Column c as an n x 1 matrix.
    ComplexMatrix col(std::size_t c) const;
    void set_col(std::size_t c, const ComplexMatrix &v);

    ComplexMatrix &operator+=(const ComplexMatrix &o);
    ComplexMatrix &operator-=(const ComplexMatrix &o);
    ComplexMatrix &operator*=(Complex s);

    bool operator==(const ComplexMatrix &o) const = default;

   private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
/// Matrix product; same as matmul().
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

/// Bipartite dimensions (d_A, d_B).
struct SystemDims {
    std::size_t a;
    std::size_t b;

    std::size_t total() const { return a * b; }
    bool operator==(const SystemDims &) const = default;
};

enum class TraceOut { First, Second };

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix adjoint(const ComplexMatrix &a);
/// Transpose in the canonical basis, no conjugation.
ComplexMatrix transpose_canonical(const ComplexMatrix &a);
ComplexMatrix conjugate(const ComplexMatrix &a);

/// Kronecker product, first factor slow: (i,j),(k,l) -> (i*rb + k, j*cb + l).
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Trace out one factor of an operator on C^{d_a} (x) C^{d_b}.
/// TraceOut::First returns a d_b x d_b matrix, TraceOut::Second a d_a x d_a one.
ComplexMatrix partial_trace(const ComplexMatrix &m, SystemDims dims, TraceOut which);

Complex trace(const ComplexMatrix &a);
/// a*b - b*a.
ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b);
/// Tr(a^dag b).
Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b);
double frobenius_norm(const ComplexMatrix &a);
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
/// ||a - a^dag||_F.
double hermiticity_defect(const ComplexMatrix &a);

/// Row-major reshape of an r x c matrix into an (r*c) x 1 column, and back.
/// No normalization is applied.
ComplexMatrix reshape_to_column(const ComplexMatrix &a);
ComplexMatrix reshape_to_matrix(const ComplexMatrix &column, std::size_t rows, std::size_t cols);

struct EigenDecomposition {
    std::vector<double> values;  ///< ascending
    ComplexMatrix vectors;       ///< eigenvectors as columns
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
/// Throws InvariantViolation when ||h - h^dag||_F > tol.herm.
EigenDecomposition eigh(const ComplexMatrix &h, const Tolerances &tol = default_tolerances());

struct SingularValueDecomposition {
    ComplexMatrix u;             ///< rows x rows, unitary
    std::vector<double> values;  ///< min(rows, cols) entries, descending
    ComplexMatrix v;             ///< cols x cols, unitary

    /// Number of singular values strictly above threshold.
    std::size_t rank(double threshold) const;
};

/// a = U diag(s) V^dag, built from eigh(a^dag a) and eigh(a a^dag).
SingularValueDecomposition svd(const ComplexMatrix &a);

/// Dyad |a><b| for column vectors a, b.
ComplexMatrix outer(const ComplexMatrix &a, const ComplexMatrix &b);

/// von Neumann entropy -sum p ln p of a Hermitian PSD matrix (natural log,
/// 0 ln 0 = 0, eigenvalues below zero are clipped).
double von_neumann_entropy(const ComplexMatrix &rho, const Tolerances &tol = default_tolerances());

}  // namespace mereo

#endif  // MEREO_LINALG_HPP
