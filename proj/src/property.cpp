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

#include "mereo/property.hpp"

#include <cmath>
#include <string>

#include "mereo/doubleket.hpp"

namespace mereo {

Property Property::from_matrix(ComplexMatrix m, const Tolerances &tol) {
    if (!m.is_square()) {
        throw DimensionError("Property: matrix must be square");
    }
    const double herm = hermiticity_defect(m);
    if (herm > tol.herm) {
        throw InvariantViolation("Property: not Hermitian (defect " + std::to_string(herm) + ")");
    }
    const double idem = frobenius_norm(matmul(m, m) - m);
    if (idem > tol.recon) {
        throw InvariantViolation("Property: not idempotent (defect " + std::to_string(idem) + ")");
    }
    const EigenDecomposition e = eigh(m, tol);
    std::size_t rank = 0;
    for (double lambda : e.values) {
        if (std::abs(lambda - 1.0) <= tol.rank) {
            ++rank;
        } else if (std::abs(lambda) > tol.rank) {
            throw InvariantViolation("Property: eigenvalue " + std::to_string(lambda) + " outside {0, 1}");
        }
    }
    return Property(std::move(m), rank);
}

Property Property::zero(std::size_t dim) { return Property(ComplexMatrix(dim, dim), 0); }

Property Property::identity(std::size_t dim) { return Property(ComplexMatrix::identity(dim), dim); }

Property Property::complement() const {
    return Property(ComplexMatrix::identity(dim()) - matrix_, dim() - rank_);
}

State State::from_matrix(ComplexMatrix m, const Tolerances &tol) {
    if (!m.is_square()) {
        throw DimensionError("State: matrix must be square");
    }
    const Complex tr = trace(m);
    if (std::abs(tr - 1.0) > 1e-9) {
        throw InvariantViolation("State: trace " + std::to_string(tr.real()) + " is not 1");
    }
    const EigenDecomposition e = eigh(m, tol);
    if (e.values.front() < -tol.rank) {
        throw InvariantViolation("State: negative eigenvalue " + std::to_string(e.values.front()));
    }
    return State(std::move(m));
}

State State::pure(const ComplexMatrix &psi) {
    if (psi.cols() != 1) {
        throw DimensionError("State::pure: expected a column vector");
    }
    const double n = frobenius_norm(psi);
    if (n == 0.0) {
        throw std::invalid_argument("State::pure: zero vector");
    }
    return State(outer(psi, psi) * (1.0 / (n * n)));
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Has:
            return "Has";
        case Verdict::HasNot:
            return "HasNot";
        case Verdict::Meaningless:
            return "Meaningless";
    }
    return "?";
}

SpanProjection property_from_span(std::span<const ComplexMatrix> vectors, std::size_t dim, const Tolerances &tol) {
    if (vectors.empty()) {
        return {Property::zero(dim), true};
    }
    ComplexMatrix stacked(dim, vectors.size());
    for (std::size_t c = 0; c < vectors.size(); ++c) {
        if (vectors[c].cols() != 1 || vectors[c].rows() != dim) {
            throw DimensionError("property_from_span: vector " + std::to_string(c) + " is not a " +
                                 std::to_string(dim) + "-dimensional column");
        }
        stacked.set_col(c, vectors[c]);
    }
    const SingularValueDecomposition s = svd(stacked);
    const std::size_t r = s.rank(tol.rank);
    if (r == 0) {
        return {Property::zero(dim), true};
    }
    ComplexMatrix proj(dim, dim);
    for (std::size_t c = 0; c < r; ++c) {
        const ComplexMatrix u = s.u.col(c);
        proj += outer(u, u);
    }
    return {Property::from_matrix(std::move(proj), tol), false};
}

bool is_nontrivial(const Property &p) { return p.rank() > 0 && p.rank() < p.dim(); }

Compatibility compatible(const Property &p, const Property &q, const Tolerances &tol) {
    if (p.dim() != q.dim()) {
        throw DimensionError("compatible: dimension mismatch");
    }
    const double n = frobenius_norm(commutator(p.matrix(), q.matrix()));
    return {n <= tol.compat, n};
}

std::optional<Property> product_if_property(const Property &p, const Property &q, const Tolerances &tol) {
    if (!compatible(p, q, tol).compatible) {
        return std::nullopt;
    }
    // Symmetrize away the O(tol) commutator before validating.
    const ComplexMatrix pq = matmul(p.matrix(), q.matrix());
    return Property::from_matrix(0.5 * (pq + adjoint(pq)), tol);
}

bool mutually_exclusive(const Property &p, const Property &q, const Tolerances &tol) {
    if (p.dim() != q.dim()) {
        throw DimensionError("mutually_exclusive: dimension mismatch");
    }
    return frobenius_norm(matmul(p.matrix(), q.matrix())) <= tol.compat &&
           frobenius_norm(matmul(q.matrix(), p.matrix())) <= tol.compat;
}

PropertyCheckResult has_property(const State &rho, const Property &p, const Tolerances &tol) {
    if (rho.dim() != p.dim()) {
        throw DimensionError("has_property: dimension mismatch");
    }
    const ComplexMatrix &r = rho.matrix();
    const ComplexMatrix &pm = p.matrix();
    const ComplexMatrix qm = p.complement().matrix();
    const double overlap = trace(matmul(pm, r)).real();
    if (frobenius_norm(matmul(matmul(pm, r), pm) - r) <= tol.support) {
        return {Verdict::Has, overlap};
    }
    if (frobenius_norm(matmul(matmul(qm, r), qm) - r) <= tol.support) {
        return {Verdict::HasNot, overlap};
    }
    return {Verdict::Meaningless, overlap};
}

Property symmetric_projector(std::size_t d) {
    if (d < 2) {
        throw DimensionError("symmetric_projector: d must be at least 2");
    }
    ComplexMatrix m = 0.5 * (ComplexMatrix::identity(d * d) + swap_operator(d));
    return Property::from_matrix(std::move(m));
}

}  // namespace mereo
