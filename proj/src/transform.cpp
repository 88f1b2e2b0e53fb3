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

#include "mereo/transform.hpp"

#include <string>

#include "mereo/doubleket.hpp"

namespace mereo {

namespace {
constexpr double kContractionSlack = 1e-9;
}

QuantumTransformation::QuantumTransformation(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw DimensionError("QuantumTransformation: empty Kraus list");
    }
    const std::size_t rows = kraus_.front().rows();
    const std::size_t cols = kraus_.front().cols();
    ComplexMatrix effect(cols, cols);
    for (const auto &k : kraus_) {
        if (k.rows() != rows || k.cols() != cols) {
            throw DimensionError("QuantumTransformation: Kraus operators differ in shape");
        }
        effect += matmul(adjoint(k), k);
    }
    const double largest = eigh(0.5 * (effect + adjoint(effect))).values.back();
    if (largest > 1.0 + kContractionSlack) {
        throw InvariantViolation("QuantumTransformation: not trace non-increasing (largest eigenvalue of "
                                 "sum K^dag K is " +
                                 std::to_string(largest) + ")");
    }
}

QuantumTransformation QuantumTransformation::identity(std::size_t d) {
    return QuantumTransformation({ComplexMatrix::identity(d)});
}

ComplexMatrix QuantumTransformation::apply(const ComplexMatrix &rho) const {
    if (rho.rows() != d_in() || rho.cols() != d_in()) {
        throw DimensionError("QuantumTransformation::apply: input dimension mismatch");
    }
    ComplexMatrix out(d_out(), d_out());
    for (const auto &k : kraus_) {
        out += matmul(matmul(k, rho), adjoint(k));
    }
    return out;
}

ChoiMatrix choi(const QuantumTransformation &t) {
    const std::size_t n = t.d_out() * t.d_in();
    ComplexMatrix m(n, n);
    for (const auto &k : t.kraus()) {
        const ComplexMatrix v = reshape_to_column(k);
        m += outer(v, v);
    }
    return {std::move(m), t.d_in(), t.d_out()};
}

double choi_distance(const QuantumTransformation &a, const QuantumTransformation &b) {
    if (a.d_in() != b.d_in() || a.d_out() != b.d_out()) {
        throw DimensionError("choi_distance: maps act between different spaces");
    }
    return frobenius_norm(choi(a).matrix - choi(b).matrix);
}

QuantumTransformation compose(const QuantumTransformation &outer, const QuantumTransformation &inner) {
    if (outer.d_in() != inner.d_out()) {
        throw DimensionError("compose: inner output dimension does not match outer input");
    }
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(outer.kraus().size() * inner.kraus().size());
    for (const auto &ko : outer.kraus()) {
        for (const auto &ki : inner.kraus()) {
            kraus.push_back(matmul(ko, ki));
        }
    }
    return QuantumTransformation(std::move(kraus));
}

bool is_repeatable(const QuantumTransformation &t, const Tolerances &tol) {
    if (t.d_in() != t.d_out()) {
        throw DimensionError("is_repeatable: map is not square");
    }
    return choi_distance(compose(t, t), t) <= tol.compat;
}

QuantumTransformation from_property(const Property &p) { return QuantumTransformation({p.matrix()}); }

ComplexMatrix apply_to_first_factor(const QuantumTransformation &t, const ComplexMatrix &x) {
    const std::size_t d = t.d_in();
    if (t.d_out() != d || x.rows() != d * d || !x.is_square()) {
        throw DimensionError("apply_to_first_factor: map must be square and X must live on C^d (x) C^d");
    }
    const ComplexMatrix id = ComplexMatrix::identity(d);
    ComplexMatrix out(d * d, d * d);
    for (const auto &k : t.kraus()) {
        const ComplexMatrix lifted = kron(k, id);
        out += matmul(matmul(lifted, x), adjoint(lifted));
    }
    return out;
}

Property extract_property(const QuantumTransformation &t, const Tolerances &tol) {
    if (!t.atomic()) {
        throw NotPropertyTransformation("extract_property: transformation is not atomic (" +
                                        std::to_string(t.kraus().size()) + " Kraus operators)");
    }
    if (t.d_in() != t.d_out()) {
        throw NotPropertyTransformation("extract_property: transformation is not square");
    }
    if (!is_repeatable(t, tol)) {
        throw NotPropertyTransformation("extract_property: transformation is not repeatable");
    }
    const std::size_t d = t.d_in();
    const ComplexMatrix image = apply_to_first_factor(t, swap_operator(d));
    const ComplexMatrix p = partial_trace(image, {d, d}, TraceOut::First);
    try {
        return Property::from_matrix(p, tol);
    } catch (const InvariantViolation &e) {
        throw NotPropertyTransformation(std::string("extract_property: not a property-type transformation: ") +
                                        e.what());
    }
}

}  // namespace mereo
