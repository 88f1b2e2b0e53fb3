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

#include "mereo/doubleket.hpp"

#include <cmath>
#include <string>

namespace mereo {

namespace {
constexpr double kNormTolerance = 1e-9;
}

GammaOperator GammaOperator::from_matrix(ComplexMatrix m) {
    const double hs = hs_inner(m, m).real();
    if (std::abs(hs - 1.0) > kNormTolerance) {
        throw InvariantViolation("GammaOperator: Tr(G^dag G) = " + std::to_string(hs) + ", expected 1");
    }
    SingularValueDecomposition s = svd(m);
    return GammaOperator(std::move(m), std::move(s));
}

GammaOperator GammaOperator::normalized(ComplexMatrix m) {
    const double n = frobenius_norm(m);
    if (n == 0.0) {
        throw std::invalid_argument("GammaOperator: cannot normalize the zero matrix");
    }
    m *= 1.0 / n;
    return from_matrix(std::move(m));
}

DoubleKet vec(const GammaOperator &g) { return {reshape_to_column(g.matrix()), g.dims()}; }

GammaOperator unvec(const DoubleKet &k) {
    if (k.vector.cols() != 1 || k.vector.rows() != k.dims.total()) {
        throw DimensionError("unvec: vector length does not match dims");
    }
    const double n = frobenius_norm(k.vector);
    if (std::abs(n - 1.0) > kNormTolerance) {
        throw InvariantViolation("unvec: ket norm " + std::to_string(n) + " is not 1");
    }
    return GammaOperator::from_matrix(reshape_to_matrix(k.vector, k.dims.a, k.dims.b));
}

ComplexMatrix swap_operator(std::size_t d) {
    if (d == 0) {
        throw DimensionError("swap_operator: d must be positive");
    }
    ComplexMatrix e(d * d, d * d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            e(b * d + a, a * d + b) = 1.0;
        }
    }
    return e;
}

DoubleKet apply_local(const ComplexMatrix &a, const ComplexMatrix &b, const GammaOperator &g) {
    const SystemDims in = g.dims();
    if (a.cols() != in.a || b.cols() != in.b) {
        throw DimensionError("apply_local: operators do not act on Gamma's factors");
    }
    const ComplexMatrix out = matmul(matmul(a, g.matrix()), transpose_canonical(b));
    return {reshape_to_column(out), {a.rows(), b.rows()}};
}

}  // namespace mereo
