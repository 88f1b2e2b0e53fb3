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

#ifndef MEREO_TRANSFORM_HPP
#define MEREO_TRANSFORM_HPP

#include <vector>

#include "mereo/linalg.hpp"
#include "mereo/property.hpp"

namespace mereo {

/// Quantum operation rho -> sum_K K rho K^dag, trace non-increasing.
class QuantumTransformation {
   public:
    /// Throws DimensionError for an empty or ragged Kraus list and
    /// InvariantViolation when the largest eigenvalue of sum K^dag K exceeds 1 + 1e-9.
    explicit QuantumTransformation(std::vector<ComplexMatrix> kraus);

    static QuantumTransformation identity(std::size_t d);

    const std::vector<ComplexMatrix> &kraus() const { return kraus_; }
    /// A single Kraus operator.
    bool atomic() const { return kraus_.size() == 1; }
    std::size_t d_in() const { return kraus_.front().cols(); }
    std::size_t d_out() const { return kraus_.front().rows(); }

    ComplexMatrix apply(const ComplexMatrix &rho) const;

   private:
    std::vector<ComplexMatrix> kraus_;
};

struct ChoiMatrix {
    ComplexMatrix matrix;  ///< (d_out * d_in) square, output factor first
    std::size_t d_in;
    std::size_t d_out;
};

/// sum_K |K>><<K| in the row-major double-ket convention.
ChoiMatrix choi(const QuantumTransformation &t);

double choi_distance(const QuantumTransformation &a, const QuantumTransformation &b);

/// outer after inner: Kraus set {K_outer * K_inner}.
QuantumTransformation compose(const QuantumTransformation &outer, const QuantumTransformation &inner);

/// ||choi(t t) - choi(t)||_F <= tol.compat. Throws DimensionError for d_in != d_out.
bool is_repeatable(const QuantumTransformation &t, const Tolerances &tol = default_tolerances());

/// The atomic map rho -> P rho P.
QuantumTransformation from_property(const Property &p);

/// Thrown by extract_property when the input is not a repeatable atomic map
/// or the extracted operator is not a projector.
class NotPropertyTransformation : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// (T (x) I)(X): T applied to the first tensor factor of X on C^d (x) C^d.
ComplexMatrix apply_to_first_factor(const QuantumTransformation &t, const ComplexMatrix &x);

/// P = Tr_1[(T (x) I)(E)] with E the swap.
Property extract_property(const QuantumTransformation &t, const Tolerances &tol = default_tolerances());

}  // namespace mereo

#endif  // MEREO_TRANSFORM_HPP
