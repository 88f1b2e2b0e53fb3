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

#ifndef MEREO_HOLISM_HPP
#define MEREO_HOLISM_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mereo/doubleket.hpp"
#include "mereo/property.hpp"

namespace mereo {

/// Which product properties P (x) Q count as nontrivial properties of the parts.
enum class Nontriviality {
    AtLeastOne,  ///< at least one of P, Q is nontrivial
    Both,        ///< both P and Q are nontrivial
};

std::string_view to_string(Nontriviality n);

/// A property of the parts, P on H_A and Q on H_B.
class ProductProperty {
   public:
    /// Throws std::invalid_argument if (p, q) violates the convention.
    ProductProperty(Property p, Property q, Nontriviality convention);

    const Property &p() const { return p_; }
    const Property &q() const { return q_; }
    Nontriviality convention() const { return convention_; }
    SystemDims dims() const { return {p_.dim(), q_.dim()}; }
    /// P (x) Q.
    ComplexMatrix matrix() const { return kron(p_.matrix(), q_.matrix()); }

   private:
    Property p_;
    Property q_;
    Nontriviality convention_;
};

bool satisfies(const Property &p, const Property &q, Nontriviality convention);

/// Result of the analytic rank-one certifier.
///
/// A product P (x) Q commutes with |G>><<G| exactly when P G Q^T = c G with
/// c in {0, 1}. c = 1 is co-occurring compatibility (lambda1), c = 0 is
/// mutual exclusion (lambda0).
struct HolismVerdict {
    std::optional<ProductProperty> lambda1_witness;
    std::optional<ProductProperty> lambda0_witness;
    /// Commutator norms of the witnesses, recomputed from scratch.
    std::optional<double> lambda1_replay_norm;
    std::optional<double> lambda0_replay_norm;
    /// No co-occurring (lambda1) witness under `convention`.
    bool cooccurrence_holistic;
    /// No commuting nontrivial product at all, lambda0 included.
    bool strictly_no_commuting_product;
    std::size_t rank_of_gamma;
    SystemDims dims;
    Nontriviality convention;
};

/// Throws InvariantViolation if a witness does not replay to a commutator
/// norm <= tol.compat or if the boolean fields are inconsistent.
void validate(const HolismVerdict &v, const Tolerances &tol = default_tolerances());

/// |G>><<G|.
Property make_holistic(const GammaOperator &g);

struct CommutatorRoutes {
    double direct;          ///< ||[P (x) Q, |G>><<G|]||_F with explicit Kronecker products
    double via_doubleket;   ///< ||2 Im(|P G Q^T>><<G|)||_F
};

CommutatorRoutes product_commutator_routes(const GammaOperator &g, const ComplexMatrix &p, const ComplexMatrix &q);

/// ||[P (x) Q, |G>><<G|]||_F. Both routes are evaluated; a disagreement
/// above 1e-10 throws InvariantViolation.
double product_commutator_norm(const GammaOperator &g, const ProductProperty &pp);

/// Decides the rank-one commutation problem from the SVD of Gamma.
/// Requires d_a, d_b >= 2.
HolismVerdict certify_rank1(const GammaOperator &g, Nontriviality convention,
                            const Tolerances &tol = default_tolerances());

struct GramSchmidtResult {
    std::vector<GammaOperator> basis;      ///< HS-orthonormal
    std::vector<std::size_t> dropped;      ///< indices of seeds found dependent
};

/// Orthonormalizes seeds under Tr(A^dag B). Throws std::invalid_argument if
/// nothing independent remains.
GramSchmidtResult gram_schmidt_hs(std::span<const ComplexMatrix> seeds, SystemDims dims,
                                  const Tolerances &tol = default_tolerances());

struct LatticeMember {
    GammaOperator gamma;
    Property property;
};

/// k pairwise mutually exclusive rank-one properties |G_i>><<G_i| with
/// G_1 = g and the rest a seeded random HS-orthonormal completion.
std::vector<LatticeMember> holistic_lattice(const GammaOperator &g, std::size_t k, std::uint64_t rng_seed,
                                            const Tolerances &tol = default_tolerances());

struct MarginalEntropy {
    double s_whole;  ///< entropy of |G>><<G| itself
    double s_part;   ///< entropy of either marginal, from the Schmidt weights
};

MarginalEntropy marginal_entropy(const GammaOperator &g);

}  // namespace mereo

#endif  // MEREO_HOLISM_HPP
