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

#ifndef MEREO_PROPERTY_HPP
#define MEREO_PROPERTY_HPP

#include <optional>
#include <span>
#include <string_view>

#include "mereo/linalg.hpp"

namespace mereo {

/// A property of a system: an orthogonal projector onto a subspace of its
/// Hilbert space. Construction validates Hermiticity, idempotency and the
/// {0,1} spectrum, and caches the rank.
class Property {
   public:
    /// Validates `m`; throws InvariantViolation if it is not an orthogonal projector.
    static Property from_matrix(ComplexMatrix m, const Tolerances &tol = default_tolerances());
    static Property zero(std::size_t dim);
    static Property identity(std::size_t dim);

    const ComplexMatrix &matrix() const { return matrix_; }
    std::size_t rank() const { return rank_; }
    std::size_t dim() const { return matrix_.rows(); }
    /// I - P.
    Property complement() const;

   private:
    Property(ComplexMatrix m, std::size_t rank) : matrix_(std::move(m)), rank_(rank) {}

    ComplexMatrix matrix_;
    std::size_t rank_;
};

/// A density matrix: Hermitian, positive semidefinite, unit trace.
/// Rank-deficient states are allowed as-is.
class State {
   public:
    static State from_matrix(ComplexMatrix m, const Tolerances &tol = default_tolerances());
    /// |psi><psi| / <psi|psi>.
    static State pure(const ComplexMatrix &psi);

    const ComplexMatrix &matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.rows(); }

   private:
    explicit State(ComplexMatrix m) : matrix_(std::move(m)) {}

    ComplexMatrix matrix_;
};

enum class Verdict { Has, HasNot, Meaningless };

std::string_view to_string(Verdict v);

struct PropertyCheckResult {
    Verdict verdict;
    /// Tr(P rho). Informational only, never used to decide the verdict.
    double overlap_probability;
};

struct SpanProjection {
    Property property;
    /// Set when the span was empty or numerically zero; `property` is then the
    /// zero projector.
    bool zero_span;
};

/// Orthogonal projector onto span(vectors). Vectors may be linearly
/// dependent; directions with singular value <= tol.rank are dropped.
SpanProjection property_from_span(std::span<const ComplexMatrix> vectors, std::size_t dim,
                                  const Tolerances &tol = default_tolerances());

/// 0 < P < I.
bool is_nontrivial(const Property &p);

struct Compatibility {
    bool compatible;
    double commutator_norm;  ///< ||PQ - QP||_F
};

Compatibility compatible(const Property &p, const Property &q, const Tolerances &tol = default_tolerances());

/// PQ as a property when P and Q commute, nothing otherwise.
std::optional<Property> product_if_property(const Property &p, const Property &q,
                                            const Tolerances &tol = default_tolerances());

/// PQ = QP = 0.
bool mutually_exclusive(const Property &p, const Property &q, const Tolerances &tol = default_tolerances());

/// Has if supp(rho) lies in range(P), HasNot if it lies in range(I - P),
/// Meaningless otherwise. Support inclusion is tested as ||P rho P - rho||_F.
PropertyCheckResult has_property(const State &rho, const Property &p, const Tolerances &tol = default_tolerances());

/// (I + E)/2 on C^d (x) C^d, E the swap.
Property symmetric_projector(std::size_t d);

}  // namespace mereo

#endif  // MEREO_PROPERTY_HPP
