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

#include "mereo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace mereo {

namespace {

std::string shape_str(const ComplexMatrix &m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape mismatch " + shape_str(a) + " vs " + shape_str(b));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("ComplexMatrix: extents must be positive");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("ComplexMatrix: extents must be positive");
    }
    if (data_.size() != rows * cols) {
        throw DimensionError("ComplexMatrix: expected " + std::to_string(rows * cols) + " entries, got " +
                             std::to_string(data_.size()));
    }
    for (const auto &z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("ComplexMatrix: non-finite entry");
        }
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    if (rows_ == 0 || cols_ == 0) {
        throw DimensionError("ComplexMatrix: extents must be positive");
    }
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw DimensionError("ComplexMatrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> diag) {
    return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> values) {
    return ComplexMatrix(values.size(), 1, std::vector<Complex>(values.begin(), values.end()));
}

ComplexMatrix ComplexMatrix::column(std::initializer_list<Complex> values) {
    return column(std::span<const Complex>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::basis_vector(std::size_t n, std::size_t index) {
    if (index >= n) {
        throw DimensionError("basis_vector: index out of range");
    }
    ComplexMatrix v(n, 1);
    v(index, 0) = 1.0;
    return v;
}

ComplexMatrix ComplexMatrix::col(std::size_t c) const {
    ComplexMatrix v(rows_, 1);
    for (std::size_t r = 0; r < rows_; ++r) {
        v(r, 0) = (*this)(r, c);
    }
    return v;
}

void ComplexMatrix::set_col(std::size_t c, const ComplexMatrix &v) {
    if (v.rows() != rows_ || v.cols() != 1 || c >= cols_) {
        throw DimensionError("set_col: shape mismatch");
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        (*this)(r, c) = v(r, 0);
    }
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &o) {
    require_same_shape(*this, o, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += o.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &o) {
    require_same_shape(*this, o, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= o.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex s) {
    for (auto &z : data_) {
        z *= s;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) { return matmul(a, b); }

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: " + shape_str(a) + " * " + shape_str(b));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

ComplexMatrix transpose_canonical(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = a(i, j);
        }
    }
    return out;
}

ComplexMatrix conjugate(const ComplexMatrix &a) {
    ComplexMatrix out = a;
    for (auto &z : out.entries()) {
        z = std::conj(z);
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t rb = b.rows();
    const std::size_t cb = b.cols();
    ComplexMatrix out(a.rows() * rb, a.cols() * cb);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < rb; ++k) {
                for (std::size_t l = 0; l < cb; ++l) {
                    out(i * rb + k, j * cb + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, SystemDims dims, TraceOut which) {
    const std::size_t n = dims.total();
    if (!m.is_square() || m.rows() != n) {
        throw DimensionError("partial_trace: expected " + std::to_string(n) + "x" + std::to_string(n) + ", got " +
                             shape_str(m));
    }
    if (which == TraceOut::First) {
        ComplexMatrix out(dims.b, dims.b);
        for (std::size_t k = 0; k < dims.b; ++k) {
            for (std::size_t l = 0; l < dims.b; ++l) {
                Complex acc{};
                for (std::size_t i = 0; i < dims.a; ++i) {
                    acc += m(i * dims.b + k, i * dims.b + l);
                }
                out(k, l) = acc;
            }
        }
        return out;
    }
    ComplexMatrix out(dims.a, dims.a);
    for (std::size_t i = 0; i < dims.a; ++i) {
        for (std::size_t j = 0; j < dims.a; ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < dims.b; ++k) {
                acc += m(i * dims.b + k, j * dims.b + k);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

Complex trace(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw DimensionError("trace: non-square " + shape_str(a));
    }
    Complex acc{};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        acc += a(i, i);
    }
    return acc;
}

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) { return matmul(a, b) - matmul(b, a); }

Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "hs_inner");
    Complex acc{};
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        acc += std::conj(ea[i]) * eb[i];
    }
    return acc;
}

double frobenius_norm(const ComplexMatrix &a) {
    double acc = 0.0;
    for (const auto &z : a.entries()) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        m = std::max(m, std::abs(ea[i] - eb[i]));
    }
    return m;
}

double hermiticity_defect(const ComplexMatrix &a) {
    if (!a.is_square()) {
        return std::numeric_limits<double>::infinity();
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            acc += std::norm(a(i, j) - std::conj(a(j, i)));
        }
    }
    return std::sqrt(acc);
}

ComplexMatrix reshape_to_column(const ComplexMatrix &a) {
    return ComplexMatrix(a.size(), 1, std::vector<Complex>(a.entries().begin(), a.entries().end()));
}

ComplexMatrix reshape_to_matrix(const ComplexMatrix &column, std::size_t rows, std::size_t cols) {
    if (column.cols() != 1 || column.rows() != rows * cols) {
        throw DimensionError("reshape_to_matrix: cannot view " + shape_str(column) + " as " + std::to_string(rows) +
                             "x" + std::to_string(cols));
    }
    return ComplexMatrix(rows, cols, std::vector<Complex>(column.entries().begin(), column.entries().end()));
}

ComplexMatrix outer(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != 1 || b.cols() != 1) {
        throw DimensionError("outer: expected column vectors");
    }
    ComplexMatrix out(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) {
            out(i, j) = a(i, 0) * std::conj(b(j, 0));
        }
    }
    return out;
}

namespace {

// Rotate each column so its largest-magnitude entry (first one on ties) is
// real and positive. Makes eigenvector output deterministic.
void fix_column_phases(ComplexMatrix &v) {
    for (std::size_t c = 0; c < v.cols(); ++c) {
        double biggest = 0.0;
        for (std::size_t r = 0; r < v.rows(); ++r) {
            biggest = std::max(biggest, std::abs(v(r, c)));
        }
        if (biggest == 0.0) {
            continue;
        }
        std::size_t pivot = 0;
        for (std::size_t r = 0; r < v.rows(); ++r) {
            if (std::abs(v(r, c)) >= biggest * (1.0 - 1e-10)) {
                pivot = r;
                break;
            }
        }
        const Complex phase = std::conj(v(pivot, c)) / std::abs(v(pivot, c));
        for (std::size_t r = 0; r < v.rows(); ++r) {
            v(r, c) *= phase;
        }
    }
}

double off_diagonal_norm2(const ComplexMatrix &a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                acc += std::norm(a(i, j));
            }
        }
    }
    return acc;
}

}  // namespace

EigenDecomposition eigh(const ComplexMatrix &h, const Tolerances &tol) {
    if (!h.is_square()) {
        throw DimensionError("eigh: non-square " + shape_str(h));
    }
    const double defect = hermiticity_defect(h);
    if (defect > tol.herm) {
        throw InvariantViolation("eigh: input is not Hermitian (defect " + std::to_string(defect) + ")");
    }
    const std::size_t n = h.rows();
    ComplexMatrix a = 0.5 * (h + adjoint(h));
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale2 = std::max(std::pow(frobenius_norm(a), 2), std::numeric_limits<double>::min());
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm2(a) <= eps * eps * scale2) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= std::numeric_limits<double>::min()) {
                    continue;
                }
                // Phase D = diag(1, conj(e)) makes the pivot block real symmetric,
                // then a real rotation R diagonalizes it. J = D R.
                const Complex e = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * std::conj(e);
                const Complex jqq = c * std::conj(e);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, c) = v(r, order[c]);
        }
    }
    fix_column_phases(out.vectors);
    return out;
}

std::size_t SingularValueDecomposition::rank(double threshold) const {
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [threshold](double s) { return s > threshold; }));
}

namespace {

// Orthogonalize candidate against columns [0, filled) of basis (two passes of
// modified Gram-Schmidt) and store it in column `filled`. Returns false when
// the candidate is numerically inside the span already.
bool orthonormalize_into(ComplexMatrix &basis, std::size_t filled, ComplexMatrix candidate) {
    const double original = frobenius_norm(candidate);
    if (original == 0.0) {
        return false;
    }
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t c = 0; c < filled; ++c) {
            Complex proj{};
            for (std::size_t r = 0; r < basis.rows(); ++r) {
                proj += std::conj(basis(r, c)) * candidate(r, 0);
            }
            for (std::size_t r = 0; r < basis.rows(); ++r) {
                candidate(r, 0) -= proj * basis(r, c);
            }
        }
    }
    const double residual = frobenius_norm(candidate);
    if (residual <= 1e-8 * original) {
        return false;
    }
    candidate *= 1.0 / residual;
    basis.set_col(filled, candidate);
    return true;
}

}  // namespace

SingularValueDecomposition svd(const ComplexMatrix &a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t k = std::min(m, n);
    const ComplexMatrix ad = adjoint(a);

    // Right singular vectors: eigenvectors of a^dag a, descending eigenvalue.
    const EigenDecomposition right = eigh(matmul(ad, a));
    ComplexMatrix v(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        v.set_col(c, right.vectors.col(n - 1 - c));
    }

    // ||a v_i|| is accurate to eps*||a||, better than sqrt of the eigenvalue.
    std::vector<ComplexMatrix> images;
    std::vector<double> sigma(n);
    images.reserve(n);
    for (std::size_t c = 0; c < n; ++c) {
        images.push_back(matmul(a, v.col(c)));
        sigma[c] = frobenius_norm(images.back());
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

    SingularValueDecomposition out{ComplexMatrix(m, m), std::vector<double>(k), ComplexMatrix(n, n)};
    for (std::size_t c = 0; c < n; ++c) {
        out.v.set_col(c, v.col(order[c]));
    }
    for (std::size_t c = 0; c < k; ++c) {
        out.values[c] = sigma[order[c]];
    }

    const double sigma_max = k > 0 ? out.values[0] : 0.0;
    const double cutoff = std::max(1e-14 * sigma_max, std::numeric_limits<double>::min());
    std::size_t filled = 0;
    for (std::size_t c = 0; c < k; ++c) {
        if (out.values[c] <= cutoff) {
            break;
        }
        if (!orthonormalize_into(out.u, filled, images[order[c]] * (1.0 / out.values[c]))) {
            break;
        }
        ++filled;
    }

    // Complete U from eigenvectors of a a^dag (smallest first), then the
    // canonical basis as a fallback.
    std::vector<ComplexMatrix> candidates;
    const EigenDecomposition left = eigh(matmul(a, ad));
    for (std::size_t c = 0; c < m; ++c) {
        candidates.push_back(left.vectors.col(c));
    }
    for (std::size_t c = 0; c < m; ++c) {
        candidates.push_back(ComplexMatrix::basis_vector(m, c));
    }
    for (const auto &candidate : candidates) {
        if (filled == m) {
            break;
        }
        if (orthonormalize_into(out.u, filled, candidate)) {
            ++filled;
        }
    }
    return out;
}

double von_neumann_entropy(const ComplexMatrix &rho, const Tolerances &tol) {
    const EigenDecomposition e = eigh(rho, tol);
    double s = 0.0;
    for (double p : e.values) {
        if (p > 0.0) {
            s -= p * std::log(p);
        }
    }
    return s;
}

}  // namespace mereo
