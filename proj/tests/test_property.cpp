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

#include <gtest/gtest.h>

#include <cmath>

#include "mereo/property.hpp"
#include "mereo/random.hpp"
#include "oracles.hpp"

using namespace mereo;

namespace {

const double kR2 = 1.0 / std::sqrt(2.0);

Property proj(std::initializer_list<Complex> diag) { return Property::from_matrix(ComplexMatrix::diagonal(diag)); }

Property up() { return proj({1.0, 0.0}); }
Property down() { return proj({0.0, 1.0}); }
Property right() { return Property::from_matrix(ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}}); }

Property even4() {
    const std::vector<ComplexMatrix> span{ComplexMatrix::column({1.0, 0.0, 1.0, 0.0}),
                                          ComplexMatrix::column({1.0, 0.0, -1.0, 0.0})};
    return property_from_span(span, 4).property;
}

// Commuting pair from a shared random eigenbasis.
std::pair<Property, Property> commuting_pair(std::size_t d, Rng &rng) {
    const ComplexMatrix g = ginibre(d, d, rng);
    const ComplexMatrix u = eigh(0.5 * (g + adjoint(g))).vectors;
    std::vector<Complex> a(d), b(d);
    for (std::size_t i = 0; i < d; ++i) {
        a[i] = static_cast<double>(rng() % 2);
        b[i] = static_cast<double>(rng() % 2);
    }
    auto conj_by = [&](const std::vector<Complex> &diag) {
        ComplexMatrix m = matmul(matmul(u, ComplexMatrix::diagonal(diag)), adjoint(u));
        return Property::from_matrix(0.5 * (m + adjoint(m)));
    };
    return {conj_by(a), conj_by(b)};
}

}  // namespace

TEST(Property, RejectsNonProjectors) {
    EXPECT_THROW(Property::from_matrix(ComplexMatrix{{1.0, 1.0}, {0.0, 0.0}}), InvariantViolation);
    EXPECT_THROW(Property::from_matrix(ComplexMatrix::diagonal({0.5, 0.0})), InvariantViolation);
    EXPECT_THROW(Property::from_matrix(ComplexMatrix(2, 3)), DimensionError);
}

TEST(Property, RankAndComplement) {
    const Property p = proj({1.0, 1.0, 0.0});
    EXPECT_EQ(p.rank(), 2u);
    EXPECT_EQ(p.complement().matrix(), ComplexMatrix::diagonal({0.0, 0.0, 1.0}));
    EXPECT_EQ(Property::zero(3).rank(), 0u);
    EXPECT_EQ(Property::identity(3).rank(), 3u);
}

TEST(State, Validation) {
    EXPECT_THROW(State::from_matrix(ComplexMatrix::diagonal({0.5, 0.25})), InvariantViolation);
    EXPECT_THROW(State::from_matrix(ComplexMatrix::diagonal({1.5, -0.5})), InvariantViolation);
    EXPECT_NO_THROW(State::from_matrix(ComplexMatrix::diagonal({1.0, 0.0})));
    const State s = State::pure(ComplexMatrix::column({2.0, 0.0}));
    EXPECT_EQ(s.matrix(), ComplexMatrix::diagonal({1.0, 0.0}));
}

TEST(PropertyFromSpan, Examples) {
    EXPECT_EQ(property_from_span(std::vector{ComplexMatrix::column({1.0, 0.0})}, 2).property.matrix(),
              ComplexMatrix::diagonal({1.0, 0.0}));
    EXPECT_LE(max_abs_diff(even4().matrix(), ComplexMatrix::diagonal({1.0, 0.0, 1.0, 0.0})), 1e-14);
}

TEST(PropertyFromSpan, DependentVectorsMatchRankOracle) {
    for (std::uint64_t i = 0; i < 10; ++i) {
        Rng rng = stream_for(60, i);
        const ComplexMatrix a = ginibre(4, 1, rng);
        const ComplexMatrix b = ginibre(4, 1, rng);
        const ComplexMatrix c = a * Complex(0.3, -1.2) + b * Complex(2.0, 0.5);
        const std::vector<ComplexMatrix> vs{a, b, c};
        const SpanProjection sp = property_from_span(vs, 4);
        oracle::EMat stacked(4, 3);
        stacked << oracle::to_eigen(a), oracle::to_eigen(b), oracle::to_eigen(c);
        EXPECT_EQ(static_cast<Eigen::Index>(sp.property.rank()), oracle::numerical_rank(stacked, 1e-7));
        EXPECT_EQ(sp.property.rank(), 2u);
        EXPECT_FALSE(sp.zero_span);
        // Every input lies in the range.
        for (const auto &v : vs) {
            EXPECT_LE(frobenius_norm(matmul(sp.property.matrix(), v) - v), 1e-12);
        }
    }
}

TEST(PropertyFromSpan, ZeroSpanIsFlagged) {
    const SpanProjection empty = property_from_span({}, 3);
    EXPECT_TRUE(empty.zero_span);
    EXPECT_EQ(empty.property.rank(), 0u);
    const SpanProjection zeros = property_from_span(std::vector{ComplexMatrix(3, 1)}, 3);
    EXPECT_TRUE(zeros.zero_span);
    EXPECT_THROW(property_from_span(std::vector{ComplexMatrix(2, 1)}, 3), DimensionError);
}

TEST(Nontrivial, Examples) {
    EXPECT_FALSE(is_nontrivial(Property::zero(2)));
    EXPECT_FALSE(is_nontrivial(Property::identity(2)));
    EXPECT_TRUE(is_nontrivial(up()));
}

TEST(Compatible, Examples) {
    const Compatibility ud = compatible(up(), down());
    EXPECT_TRUE(ud.compatible);
    EXPECT_EQ(ud.commutator_norm, 0.0);
    const Compatibility ur = compatible(up(), right());
    EXPECT_FALSE(ur.compatible);
    EXPECT_NEAR(ur.commutator_norm, kR2, 1e-15);
    EXPECT_TRUE(compatible(right(), right()).compatible);
}

TEST(ProductIfProperty, Examples) {
    const auto pq = product_if_property(proj({1.0, 1.0, 0.0, 0.0}), proj({1.0, 0.0, 1.0, 0.0}));
    ASSERT_TRUE(pq.has_value());
    EXPECT_EQ(pq->matrix(), ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0}));
    EXPECT_FALSE(product_if_property(up(), right()).has_value());
    const auto pi = product_if_property(right(), Property::identity(2));
    ASSERT_TRUE(pi.has_value());
    EXPECT_LE(max_abs_diff(pi->matrix(), right().matrix()), 1e-15);
}

TEST(MutuallyExclusive, Examples) {
    EXPECT_TRUE(mutually_exclusive(up(), down()));
    EXPECT_FALSE(mutually_exclusive(up(), up()));
}

TEST(MutuallyExclusive, BasisSaturatesDimension) {
    for (std::size_t d = 2; d <= 6; ++d) {
        std::vector<Property> family;
        for (std::size_t i = 0; i < d; ++i) {
            const ComplexMatrix e = ComplexMatrix::basis_vector(d, i);
            family.push_back(Property::from_matrix(outer(e, e)));
        }
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i + 1; j < d; ++j) {
                EXPECT_TRUE(mutually_exclusive(family[i], family[j]));
            }
        }
        // A (d+1)-th nonzero property always overlaps one of them.
        Rng rng = stream_for(61, d);
        const Property extra = Property::from_matrix(random_projector_matrix(d, 1, rng));
        bool exclusive_with_all = true;
        for (const auto &p : family) {
            exclusive_with_all = exclusive_with_all && mutually_exclusive(p, extra);
        }
        EXPECT_FALSE(exclusive_with_all);
    }
}

TEST(PropertyAlgebra, CommutingPairsAndGenericPairs) {
    for (std::uint64_t i = 0; i < 40; ++i) {
        Rng rng = stream_for(62, i);
        const std::size_t d = 2 + i % 4;
        auto [p, q] = commuting_pair(d, rng);
        const Compatibility pq = compatible(p, q);
        const Compatibility qp = compatible(q, p);
        EXPECT_TRUE(pq.compatible);
        EXPECT_EQ(pq.compatible, qp.compatible);
        EXPECT_NEAR(pq.commutator_norm, qp.commutator_norm, 1e-15);
        EXPECT_TRUE(product_if_property(p, q).has_value());
        if (mutually_exclusive(p, q)) {
            EXPECT_TRUE(pq.compatible);
        }

        const Property a = Property::from_matrix(random_projector_matrix(d, 1, rng));
        const Property b = Property::from_matrix(random_projector_matrix(d, 1, rng));
        const Compatibility ab = compatible(a, b);
        EXPECT_FALSE(ab.compatible);
        EXPECT_EQ(product_if_property(a, b).has_value(), ab.compatible);
        EXPECT_FALSE(mutually_exclusive(a, b));
        for (const Property *x : std::initializer_list<const Property *>{&p, &q, &a, &b}) {
            for (double ev : oracle::eigenvalues(oracle::to_eigen(x->matrix()))) {
                EXPECT_LE(std::min(std::abs(ev), std::abs(ev - 1.0)), 1e-7);
            }
        }
    }
}

TEST(HasProperty, SpinExamples) {
    const State up_state = State::pure(ComplexMatrix::column({1.0, 0.0}));
    const State right_state = State::pure(ComplexMatrix::column({kR2, kR2}));
    EXPECT_EQ(has_property(up_state, up()).verdict, Verdict::Has);
    EXPECT_EQ(has_property(up_state, down()).verdict, Verdict::HasNot);
    const PropertyCheckResult m = has_property(right_state, up());
    EXPECT_EQ(m.verdict, Verdict::Meaningless);
    EXPECT_NEAR(m.overlap_probability, 0.5, 1e-15);
    EXPECT_EQ(has_property(right_state, down()).verdict, Verdict::Meaningless);
}

TEST(HasProperty, EvenExamples) {
    const State mixed = State::from_matrix(ComplexMatrix::diagonal({0.25, 0.0, 0.75, 0.0}));
    const State coherent = State::pure(ComplexMatrix::column({1.0, 0.0, 1.0, 0.0}));
    EXPECT_EQ(has_property(mixed, even4()).verdict, Verdict::Has);
    EXPECT_EQ(has_property(coherent, even4()).verdict, Verdict::Has);
    const State odd = State::pure(ComplexMatrix::column({0.0, 1.0, 0.0, 0.0}));
    EXPECT_EQ(has_property(odd, even4()).verdict, Verdict::HasNot);
}

TEST(HasProperty, PureStateCrossCheck) {
    for (std::uint64_t i = 0; i < 60; ++i) {
        Rng rng = stream_for(63, i);
        const std::size_t d = 2 + i % 4;
        const Property p = Property::from_matrix(random_projector_matrix(d, 1 + i % (d - 1), rng));
        ComplexMatrix psi = ginibre(d, 1, rng);
        if (i % 3 == 0) {
            psi = matmul(p.matrix(), psi);
        } else if (i % 3 == 1) {
            psi = matmul(p.complement().matrix(), psi);
        }
        const Verdict v = has_property(State::pure(psi), p).verdict;
        const ComplexMatrix unit = psi * (1.0 / frobenius_norm(psi));
        const ComplexMatrix ppsi = matmul(p.matrix(), unit);
        const bool inside = frobenius_norm(ppsi - unit) <= 1e-9;
        const bool outside = frobenius_norm(ppsi) <= 1e-9;
        EXPECT_FALSE(inside && outside);
        const Verdict expected = inside ? Verdict::Has : (outside ? Verdict::HasNot : Verdict::Meaningless);
        EXPECT_EQ(v, expected) << "sample " << i;
    }
}

TEST(SymmetricProjector, TwoQubits) {
    const Property sym = symmetric_projector(2);
    EXPECT_EQ(sym.rank(), 3u);
    const State upup = State::pure(ComplexMatrix::column({1.0, 0.0, 0.0, 0.0}));
    const State singlet = State::pure(ComplexMatrix::column({0.0, kR2, -kR2, 0.0}));
    EXPECT_EQ(has_property(upup, sym).verdict, Verdict::Has);
    EXPECT_EQ(has_property(singlet, sym).verdict, Verdict::HasNot);
    EXPECT_THROW(symmetric_projector(1), std::invalid_argument);
}

TEST(SymmetricProjector, RankAcrossDimensions) {
    for (std::size_t d = 2; d <= 5; ++d) {
        const Property sym = symmetric_projector(d);
        EXPECT_EQ(sym.rank(), d * (d + 1) / 2);
        const ComplexMatrix e = 2.0 * sym.matrix() - ComplexMatrix::identity(d * d);
        EXPECT_LE(oracle::diff(e, oracle::swap(d)), 1e-15);
    }
}
