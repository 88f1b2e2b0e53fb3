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

#include "mereo/doubleket.hpp"
#include "mereo/property.hpp"
#include "mereo/random.hpp"
#include "oracles.hpp"

using namespace mereo;

namespace {
const double kR2 = 1.0 / std::sqrt(2.0);
}

// The one test that pins kron's index order to vec's: if either convention
// changes, this breaks.
TEST(DoubleKet, KronVecConformance) {
    for (std::uint64_t i = 0; i < 20; ++i) {
        Rng rng = stream_for(70, i);
        const std::size_t da = 1 + i % 3, db = 1 + (i / 3) % 3, ra = 1 + (i / 2) % 4, rb = 1 + (i / 5) % 3;
        const ComplexMatrix a = ginibre(ra, da, rng);
        const ComplexMatrix b = ginibre(rb, db, rng);
        const ComplexMatrix c = ginibre(da, db, rng);
        const oracle::EMat lhs = oracle::naive_kron(oracle::to_eigen(a), oracle::to_eigen(b)) *
                                 oracle::naive_vec(oracle::to_eigen(c));
        const oracle::EMat rhs =
            oracle::naive_vec(oracle::to_eigen(a) * oracle::to_eigen(c) * oracle::to_eigen(b).transpose());
        EXPECT_LE((lhs - rhs).norm(), 1e-12);
        EXPECT_LE(oracle::diff(matmul(kron(a, b), reshape_to_column(c)), rhs), 1e-12);
    }
}

TEST(GammaOperator, Validation) {
    EXPECT_THROW(GammaOperator::from_matrix(ComplexMatrix::identity(2)), InvariantViolation);
    EXPECT_THROW(GammaOperator::normalized(ComplexMatrix(2, 2)), std::invalid_argument);
    const GammaOperator g = GammaOperator::normalized(ComplexMatrix{{3.0, 0.0}, {0.0, 4.0}});
    EXPECT_NEAR(hs_inner(g.matrix(), g.matrix()).real(), 1.0, 1e-15);
    EXPECT_NEAR(g.singular_values()[0], 0.8, 1e-15);
    EXPECT_NEAR(g.singular_values()[1], 0.6, 1e-15);
    EXPECT_EQ(g.rank(), 2u);
}

TEST(GammaOperator, SingularValuesMatchOracle) {
    for (std::uint64_t i = 0; i < 10; ++i) {
        Rng rng = stream_for(71, i);
        const GammaOperator g = GammaOperator::normalized(ginibre(2 + i % 3, 2 + (i / 3) % 3, rng));
        const auto ref = oracle::singular_values(oracle::to_eigen(g.matrix()));
        for (std::size_t k = 0; k < ref.size(); ++k) {
            EXPECT_NEAR(g.singular_values()[k], ref[k], 1e-10);
        }
        EXPECT_NEAR(hs_inner(g.matrix(), g.matrix()).real(), 1.0, 1e-12);
    }
}

TEST(Vec, Examples) {
    const DoubleKet bell = vec(GammaOperator::from_matrix(ComplexMatrix::identity(2) * kR2));
    EXPECT_LE(max_abs_diff(bell.vector, ComplexMatrix::column({kR2, 0.0, 0.0, kR2})), 1e-16);
    EXPECT_EQ(bell.dims, (SystemDims{2, 2}));
    const DoubleKet zz = vec(GammaOperator::from_matrix(ComplexMatrix::diagonal({1.0, 0.0})));
    EXPECT_EQ(zz.vector, ComplexMatrix::basis_vector(4, 0));
}

TEST(Unvec, Examples) {
    const GammaOperator g = unvec({ComplexMatrix::column({kR2, 0.0, 0.0, kR2}), {2, 2}});
    EXPECT_LE(max_abs_diff(g.matrix(), ComplexMatrix::identity(2) * kR2), 1e-16);
    const GammaOperator e01 = unvec({ComplexMatrix::basis_vector(4, 1), {2, 2}});
    EXPECT_EQ(e01.matrix(), (ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}));
    EXPECT_THROW(unvec({ComplexMatrix::column({1.0, 1.0, 0.0, 0.0}), {2, 2}}), InvariantViolation);
}

TEST(Vec, IsometryAndRoundtrip) {
    for (std::uint64_t i = 0; i < 20; ++i) {
        Rng rng = stream_for(72, i);
        const SystemDims dims{2 + i % 3, 2 + (i / 3) % 3};
        const GammaOperator g = GammaOperator::normalized(ginibre(dims.a, dims.b, rng));
        const GammaOperator h = GammaOperator::normalized(ginibre(dims.a, dims.b, rng));
        const DoubleKet kg = vec(g);
        EXPECT_NEAR(frobenius_norm(kg.vector), 1.0, 1e-14);
        EXPECT_LE(std::abs(hs_inner(g.matrix(), h.matrix()) - hs_inner(kg.vector, vec(h).vector)), 1e-12);
        EXPECT_EQ(unvec(kg).matrix(), g.matrix());
        const ComplexMatrix u = random_unit_vector(dims.total(), rng);
        EXPECT_EQ(vec(unvec({u, dims})).vector, u);
    }
}

TEST(Swap, Structure) {
    const ComplexMatrix e2 = swap_operator(2);
    EXPECT_EQ(matmul(e2, ComplexMatrix::basis_vector(4, 1)), ComplexMatrix::basis_vector(4, 2));
    EXPECT_EQ(matmul(e2, ComplexMatrix::basis_vector(4, 0)), ComplexMatrix::basis_vector(4, 0));
    EXPECT_EQ(matmul(e2, ComplexMatrix::basis_vector(4, 3)), ComplexMatrix::basis_vector(4, 3));
    for (std::size_t d = 2; d <= 5; ++d) {
        const ComplexMatrix e = swap_operator(d);
        EXPECT_LE(oracle::diff(e, oracle::swap(d)), 0.0);
        EXPECT_EQ(matmul(e, e), ComplexMatrix::identity(d * d));
        EXPECT_EQ(adjoint(e), e);
        for (const auto &z : e.entries()) {
            EXPECT_TRUE(z == Complex(0.0) || z == Complex(1.0));
        }
        EXPECT_LE(max_abs_diff(e, 2.0 * symmetric_projector(d).matrix() - ComplexMatrix::identity(d * d)), 1e-15);
    }
}

TEST(ApplyLocal, Examples) {
    Rng rng = stream_for(73, 0);
    const GammaOperator g = GammaOperator::normalized(ginibre(2, 3, rng));
    EXPECT_LE(max_abs_diff(apply_local(ComplexMatrix::identity(2), ComplexMatrix::identity(3), g).vector,
                           vec(g).vector),
              1e-16);
    const double r3 = 1.0 / std::sqrt(3.0);
    const GammaOperator maxent = GammaOperator::from_matrix(ComplexMatrix::identity(3) * r3);
    const ComplexMatrix a = ginibre(3, 3, rng);
    EXPECT_LE(max_abs_diff(apply_local(a, ComplexMatrix::identity(3), maxent).vector, reshape_to_column(a * r3)),
              1e-15);
}

TEST(ApplyLocal, KronPathAgreesIncludingRectangular) {
    for (std::uint64_t i = 0; i < 20; ++i) {
        Rng rng = stream_for(74, i);
        const std::size_t da = 3 - i % 2, db = 3;
        const GammaOperator g = GammaOperator::normalized(ginibre(da, db, rng));
        const ComplexMatrix a = ginibre(1 + i % 4, da, rng);
        const ComplexMatrix b = ginibre(1 + (i / 4) % 4, db, rng);
        const DoubleKet k = apply_local(a, b, g);
        EXPECT_EQ(k.dims, (SystemDims{a.rows(), b.rows()}));
        const oracle::EMat ref = oracle::naive_kron(oracle::to_eigen(a), oracle::to_eigen(b)) *
                                 oracle::naive_vec(oracle::to_eigen(g.matrix()));
        EXPECT_LE(oracle::diff(k.vector, ref), 1e-12);
    }
}
