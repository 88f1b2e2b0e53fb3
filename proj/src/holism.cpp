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

#include "mereo/holism.hpp"

#include <cmath>
#include <string>

#include "mereo/random.hpp"

namespace mereo {

namespace {

constexpr double kRouteAgreement = 1e-10;

// Projector onto the span of the first r columns of u, symmetrized.
ComplexMatrix leading_column_projector(const ComplexMatrix &u, std::size_t r) {
    ComplexMatrix p(u.rows(), u.rows());
    for (std::size_t c = 0; c < r; ++c) {
        const ComplexMatrix col = u.col(c);
        p += outer(col, col);
    }
    return 0.5 * (p + adjoint(p));
}

}  // namespace

std::string_view to_string(Nontriviality n) {
    switch (n) {
        case Nontriviality::AtLeastOne:
            return "atleastone";
        case Nontriviality::Both:
            return "both";
    }
    return "?";
}

bool satisfies(const Property &p, const Property &q, Nontriviality convention) {
    if (convention == Nontriviality::Both) {
        return is_nontrivial(p) && is_nontrivial(q);
    }
    // The zero projector kills everything; it is never a property of the parts.
    if (p.rank() == 0 || q.rank() == 0) {
        return false;
    }
    return is_nontrivial(p) || is_nontrivial(q);
}

ProductProperty::ProductProperty(Property p, Property q, Nontriviality convention)
    : p_(std::move(p)), q_(std::move(q)), convention_(convention) {
    if (!satisfies(p_, q_, convention_)) {
        throw std::invalid_argument("ProductProperty: (P, Q) violates the '" + std::string(to_string(convention_)) +
                                    "' nontriviality convention");
    }
}

void validate(const HolismVerdict &v, const Tolerances &tol) {
    if (v.cooccurrence_holistic != !v.lambda1_witness.has_value()) {
        throw InvariantViolation("HolismVerdict: cooccurrence_holistic disagrees with lambda1 witness");
    }
    if (v.strictly_no_commuting_product && !v.cooccurrence_holistic) {
        throw InvariantViolation("HolismVerdict: strict verdict without co-occurrence verdict");
    }
    if (v.strictly_no_commuting_product != (!v.lambda1_witness && !v.lambda0_witness)) {
        throw InvariantViolation("HolismVerdict: strict verdict disagrees with witnesses");
    }
    if (v.lambda1_replay_norm && *v.lambda1_replay_norm > tol.compat) {
        throw InvariantViolation("HolismVerdict: lambda1 witness replays to " + std::to_string(*v.lambda1_replay_norm));
    }
    if (v.lambda0_replay_norm && *v.lambda0_replay_norm > tol.compat) {
        throw InvariantViolation("HolismVerdict: lambda0 witness replays to " + std::to_string(*v.lambda0_replay_norm));
    }
}

Property make_holistic(const GammaOperator &g) {
    const ComplexMatrix k = vec(g).vector;
    const ComplexMatrix dyad = outer(k, k);
    return Property::from_matrix(0.5 * (dyad + adjoint(dyad)));
}

CommutatorRoutes product_commutator_routes(const GammaOperator &g, const ComplexMatrix &p, const ComplexMatrix &q) {
    const SystemDims dims = g.dims();
    if (p.rows() != dims.a || !p.is_square() || q.rows() != dims.b || !q.is_square()) {
        throw DimensionError("product_commutator: P, Q do not match Gamma's dims");
    }
    const ComplexMatrix ket = vec(g).vector;
    const ComplexMatrix pi = outer(ket, ket);
    const double direct = frobenius_norm(commutator(kron(p, q), pi));

    // (P (x) Q)|G>> = |P G Q^T>>, and [A, B] = 2i Im(AB) for Hermitian A, B.
    const ComplexMatrix moved = reshape_to_column(matmul(matmul(p, g.matrix()), transpose_canonical(q)));
    const ComplexMatrix ab = outer(moved, ket);
    const double via = frobenius_norm(ab - adjoint(ab));
    return {direct, via};
}

double product_commutator_norm(const GammaOperator &g, const ProductProperty &pp) {
    const CommutatorRoutes r = product_commutator_routes(g, pp.p().matrix(), pp.q().matrix());
    if (std::abs(r.direct - r.via_doubleket) > kRouteAgreement) {
        throw InvariantViolation("product_commutator_norm: routes disagree (" + std::to_string(r.direct) + " vs " +
                                 std::to_string(r.via_doubleket) + ")");
    }
    return r.direct;
}

HolismVerdict certify_rank1(const GammaOperator &g, Nontriviality convention, const Tolerances &tol) {
    const SystemDims dims = g.dims();
    if (dims.a < 2 || dims.b < 2) {
        throw DimensionError("certify_rank1: both factors need dimension >= 2");
    }
    const SingularValueDecomposition &s = g.decomposition();
    const std::size_t r = s.rank(tol.rank);

    HolismVerdict v{.lambda1_witness = std::nullopt,
                    .lambda0_witness = std::nullopt,
                    .lambda1_replay_norm = std::nullopt,
                    .lambda0_replay_norm = std::nullopt,
                    .cooccurrence_holistic = true,
                    .strictly_no_commuting_product = true,
                    .rank_of_gamma = r,
                    .dims = dims,
                    .convention = convention};

    // lambda = 1: P G Q^T = G forces range(P) >= range(G) and range(Q^T) >=
    // row space of G. The smallest such pair is P = U_r U_r^dag,
    // Q^T = V_r V_r^dag; any larger pair is less likely to be nontrivial.
    const bool a_room = r < dims.a;
    const bool b_room = r < dims.b;
    const bool lambda1_possible = convention == Nontriviality::Both ? (a_room && b_room) : (a_room || b_room);
    if (lambda1_possible) {
        Property p = Property::from_matrix(leading_column_projector(s.u, r), tol);
        Property q = Property::from_matrix(transpose_canonical(leading_column_projector(s.v, r)), tol);
        v.lambda1_witness.emplace(std::move(p), std::move(q), convention);
        v.lambda1_replay_norm = product_commutator_norm(g, *v.lambda1_witness);
    }

    // lambda = 0: Q = |e_j><e_j| for the first canonical e_j with G e_j != 0
    // (e_j is real, so Q^T = Q), and P = projector onto (G e_j)^perp.
    const ComplexMatrix &gm = g.matrix();
    for (std::size_t j = 0; j < dims.b; ++j) {
        const ComplexMatrix image = gm.col(j);
        const double n = frobenius_norm(image);
        if (n <= tol.rank) {
            continue;
        }
        const ComplexMatrix e = ComplexMatrix::basis_vector(dims.b, j);
        const ComplexMatrix dyad = outer(image, image) * (1.0 / (n * n));
        Property p = Property::from_matrix(ComplexMatrix::identity(dims.a) - 0.5 * (dyad + adjoint(dyad)), tol);
        Property q = Property::from_matrix(outer(e, e), tol);
        v.lambda0_witness.emplace(std::move(p), std::move(q), convention);
        v.lambda0_replay_norm = product_commutator_norm(g, *v.lambda0_witness);
        break;
    }

    v.cooccurrence_holistic = !v.lambda1_witness.has_value();
    v.strictly_no_commuting_product = v.cooccurrence_holistic && !v.lambda0_witness.has_value();
    return v;
}

GramSchmidtResult gram_schmidt_hs(std::span<const ComplexMatrix> seeds, SystemDims dims, const Tolerances &tol) {
    GramSchmidtResult out;
    std::vector<ComplexMatrix> accepted;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const ComplexMatrix &seed = seeds[i];
        if (seed.rows() != dims.a || seed.cols() != dims.b) {
            throw DimensionError("gram_schmidt_hs: seed " + std::to_string(i) + " has the wrong shape");
        }
        const double original = frobenius_norm(seed);
        ComplexMatrix w = seed;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &e : accepted) {
                w -= e * hs_inner(e, w);
            }
        }
        const double residual = frobenius_norm(w);
        if (original == 0.0 || residual <= tol.rank * original) {
            out.dropped.push_back(i);
            continue;
        }
        w *= 1.0 / residual;
        accepted.push_back(w);
        out.basis.push_back(GammaOperator::from_matrix(std::move(w)));
    }
    if (out.basis.empty()) {
        throw std::invalid_argument("gram_schmidt_hs: seeds span nothing");
    }
    return out;
}

std::vector<LatticeMember> holistic_lattice(const GammaOperator &g, std::size_t k, std::uint64_t rng_seed,
                                            const Tolerances &tol) {
    const SystemDims dims = g.dims();
    if (k == 0 || k > dims.total()) {
        throw DimensionError("holistic_lattice: k must be in [1, " + std::to_string(dims.total()) + "]");
    }
    std::vector<ComplexMatrix> seeds{g.matrix()};
    std::vector<GammaOperator> basis;
    std::uint64_t draw = 0;
    while (true) {
        basis = gram_schmidt_hs(seeds, dims, tol).basis;
        if (basis.size() >= k) {
            break;
        }
        Rng rng = stream_for(rng_seed, draw++);
        for (std::size_t i = basis.size(); i < k; ++i) {
            seeds.push_back(ginibre(dims.a, dims.b, rng));
        }
    }
    std::vector<LatticeMember> members;
    members.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        // The first member must be g itself, not its re-normalized copy.
        GammaOperator gi = i == 0 ? g : basis[i];
        Property pi = make_holistic(gi);
        members.push_back({std::move(gi), std::move(pi)});
    }
    return members;
}

MarginalEntropy marginal_entropy(const GammaOperator &g) {
    double s_part = 0.0;
    for (double sigma : g.singular_values()) {
        const double w = sigma * sigma;
        if (w > 0.0) {
            s_part -= w * std::log(w);
        }
    }
    const double s_whole = von_neumann_entropy(make_holistic(g).matrix());
    return {std::max(s_whole, 0.0), s_part};
}

}  // namespace mereo
