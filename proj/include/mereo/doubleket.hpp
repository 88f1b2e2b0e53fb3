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

#ifndef MEREO_DOUBLEKET_HPP
#define MEREO_DOUBLEKET_HPP

#include "mereo/linalg.hpp"

namespace mereo {

// Vectorization convention, shared with kron(): the row index of Gamma is the
// first tensor factor, so |Gamma>> has entry (i * d_b + j) = Gamma(i, j) and
//
//     kron(A, B) * vec(C) == vec(A * C * B^T).

/// |Psi>> = sum_ij Psi_ij |i> (x) |j>, a column of length d_a * d_b.
struct DoubleKet {
    ComplexMatrix vector;
    SystemDims dims;
};

/// A d_a x d_b operator with unit Hilbert-Schmidt norm, with its SVD cached.
class GammaOperator {
   public:
    /// Validates Tr(G^dag G) = 1 within 1e-9.
    static GammaOperator from_matrix(ComplexMatrix m);
    /// Rescales m to unit HS norm; throws std::invalid_argument for m = 0.
    static GammaOperator normalized(ComplexMatrix m);

    const ComplexMatrix &matrix() const { return matrix_; }
    SystemDims dims() const { return {matrix_.rows(), matrix_.cols()}; }
    const SingularValueDecomposition &decomposition() const { return svd_; }
    const std::vector<double> &singular_values() const { return svd_.values; }
    std::size_t rank(const Tolerances &tol = default_tolerances()) const { return svd_.rank(tol.rank); }

   private:
    GammaOperator(ComplexMatrix m, SingularValueDecomposition s) : matrix_(std::move(m)), svd_(std::move(s)) {}

    ComplexMatrix matrix_;
    SingularValueDecomposition svd_;
};

DoubleKet vec(const GammaOperator &g);

/// Inverse of vec(); rejects kets whose norm is not within 1e-9 of 1.
GammaOperator unvec(const DoubleKet &k);

/// E(|a> (x) |b>) = |b> (x) |a> on C^d (x) C^d.
ComplexMatrix swap_operator(std::size_t d);

/// (A (x) B)|Gamma>> computed as |A Gamma B^T>>. The result is generally not
/// normalized; its dims are (A.rows, B.rows).
DoubleKet apply_local(const ComplexMatrix &a, const ComplexMatrix &b, const GammaOperator &g);

}  // namespace mereo

#endif  // MEREO_DOUBLEKET_HPP
