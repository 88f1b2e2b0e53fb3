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
#include <numbers>

#include "mereo/doubleket.hpp"
#include "mereo/random.hpp"
#include "mereo/transform.hpp"
#include "oracles.hpp"

using namespace mereo;

namespace {

const double kR2 = 1.0 / std::sqrt(2.0);

Property proj(std::initializer_list<Complex> diag) { return Property::from_matrix(ComplexMatrix::diagonal(diag)); }

ComplexMatrix matrix_unit(std::size_t d, std::size_t i, std::size_t j) {
    return outer(ComplexMatrix::basis_vector(d, i), ComplexMatrix::basis_vector(d, j));
}

// Compares two maps on every matrix unit |i><j|.
double action_distance(const QuantumTransformation &a, const QuantumTransformation &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.d_in(); ++i) {
        for (std::size_t j = 0; j < a.d_in(); ++j) {
            const ComplexMatrix e = matrix_unit(a.d_in(), i, j);
            worst = std::max(worst, max_abs_diff(a.apply(e), b.apply(e)));
        }
    }
    return worst;
}

QuantumTransformation rotation(double angle) {
    return QuantumTransformation(
        {ComplexMatrix{{std::cos(angle), -std::sin(angle)}, {std::sin(angle), std::cos(angle)}}});
}

}  // namespace

TEST(Transformation, Validation) {
    EXPECT_THROW(QuantumTransformation({}), DimensionError);
    EXPECT_THROW(QuantumTransformation({ComplexMatrix::identity(2), ComplexMatrix::identity(3)}), DimensionError);
    EXPECT_THROW(QuantumTransformation({ComplexMatrix::identity(2) * 1.1}), InvariantViolation);
    // Oblique idempotent: K^2 = K but K^dag K has eigenvalue 2.
    EXPECT_THROW(QuantumTransformation({ComplexMatrix{{1.0, 1.0}, {0.0, 0.0}}}), InvariantViolation);
    EXPECT_NO_THROW(QuantumTransformation({ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0})}));
}

TEST(Choi, Examples) {
    const ChoiMatrix id = choi(QuantumTransformation::identity(2));
    const ComplexMatrix phi = ComplexMatrix::column({kR2, 0.0, 0.0, kR2});
    EXPECT_LE(max_abs_diff(id.matrix, 2.0 * outer(phi, phi)), 1e-15);
    const ChoiMatrix pad = choi(QuantumTransformation({ComplexMatrix::diagonal({1.0, 0.0})}));
    EXPECT_EQ(svd(pad.matrix).rank(1e-7), 1u);
}

TEST(Choi, EqualityMatchesActionOnMatrixUnits) {
    for (std::uint64_t i = 0; i < 20; ++i) {
        Rng rng = stream_for(100, i);
        // Same map, different Kraus sets: {K1, K2} vs its unitary mixture.
        ComplexMatrix k1 = ginibre(2, 2, rng);
        ComplexMatrix k2 = ginibre(2, 2, rng);
        const double top = eigh(matmul(adjoint(k1), k1) + matmul(adjoint(k2), k2)).values.back();
        k1 *= 1.0 / std::sqrt(top);
        k2 *= 1.0 / std::sqrt(top);
        const double c = std::cos(0.3 * static_cast<double>(i)), s = std::sin(0.3 * static_cast<double>(i));
        const QuantumTransformation a({k1, k2});
        const QuantumTransformation b({k1 * c + k2 * s, k2 * c - k1 * s});
        EXPECT_LE(choi_distance(a, b), 1e-12);
        EXPECT_LE(action_distance(a, b), 1e-12);
        ComplexMatrix k3 = ginibre(2, 2, rng);
        k3 *= 1.0 / svd(k3).values.front();
        const QuantumTransformation other({k3});
        EXPECT_EQ(choi_distance(a, other) <= 1e-9, action_distance(a, other) <= 1e-9);
    }
}

TEST(Compose, Examples) {
    Rng rng = stream_for(101, 0);
    const QuantumTransformation t({ginibre(2, 2, rng) * 0.4, ginibre(2, 2, rng) * 0.4});
    EXPECT_LE(choi_distance(compose(QuantumTransformation::identity(2), t), t), 1e-14);
    const QuantumTransformation pp = from_property(proj({1.0, 0.0}));
    EXPECT_LE(choi_distance(compose(pp, pp), pp), 1e-15);
    const QuantumTransformation x({ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}});
    EXPECT_LE(choi_distance(compose(x, x), QuantumTransformation::identity(2)), 1e-15);
    // Order: outer after inner.
    const QuantumTransformation up = from_property(proj({1.0, 0.0}));
    const ComplexMatrix rho = ComplexMatrix::diagonal({0.0, 1.0});
    EXPECT_EQ(compose(up, x).apply(rho), ComplexMatrix::diagonal({1.0, 0.0}));
    EXPECT_EQ(compose(x, up).apply(rho), ComplexMatrix(2, 2));
}

TEST(Repeatable, Examples) {
    EXPECT_TRUE(is_repeatable(from_property(proj({1.0, 0.0}))));
    EXPECT_FALSE(is_repeatable(rotation(std::numbers::pi / 4)));
    EXPECT_FALSE(is_repeatable(QuantumTransformation({ComplexMatrix::diagonal({0.5, 0.0})})));
    // Full dephasing is repeatable but not atomic.
    const QuantumTransformation dephase({ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0})});
    EXPECT_TRUE(is_repeatable(dephase));
    EXPECT_THROW(extract_property(dephase), NotPropertyTransformation);
    EXPECT_THROW(is_repeatable(QuantumTransformation({ComplexMatrix(2, 3)})), DimensionError);
}

TEST(Repeatable, RandomProjectorsAndNonProjectors) {
    for (std::uint64_t i = 0; i < 100; ++i) {
        Rng rng = stream_for(102, i);
        const std::size_t d = 2 + i % 4;
        const Property p = Property::from_matrix(random_projector_matrix(d, 1 + i % (d - 1), rng));
        EXPECT_TRUE(is_repeatable(from_property(p)));
        ComplexMatrix k = ginibre(d, d, rng);
        k *= 1.0 / svd(k).values.front();
        const QuantumTransformation t({k});
        EXPECT_FALSE(is_repeatable(t));
        EXPECT_GE(choi_distance(compose(t, t), t), 1e-3);
    }
}

TEST(FromProperty, Examples) {
    EXPECT_LE(choi_distance(from_property(Property::identity(3)), QuantumTransformation::identity(3)), 0.0);
    const QuantumTransformation up = from_property(proj({1.0, 0.0}));
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const ComplexMatrix e = matrix_unit(2, i, j);
            EXPECT_EQ(up.apply(e), e(0, 0) * matrix_unit(2, 0, 0));
        }
    }
}

TEST(ExtractProperty, Examples) {
    EXPECT_EQ(extract_property(from_property(proj({1.0, 0.0}))).matrix(), ComplexMatrix::diagonal({1.0, 0.0}));
    const Property sym = symmetric_projector(2);
    const Property back = extract_property(from_property(sym));
    EXPECT_EQ(back.rank(), 3u);
    EXPECT_LE(max_abs_diff(back.matrix(), sym.matrix()), 1e-15);
    for (double phase : {0.4, 1.9, -2.6}) {
        const QuantumTransformation t({sym.matrix() * std::polar(1.0, phase)});
        EXPECT_LE(max_abs_diff(extract_property(t).matrix(), sym.matrix()), 1e-15);
    }
}

TEST(ExtractProperty, Rejections) {
    EXPECT_THROW(extract_property(rotation(0.3)), NotPropertyTransformation);
    EXPECT_THROW(extract_property(QuantumTransformation({ComplexMatrix(2, 3)})), NotPropertyTransformation);
    EXPECT_THROW(extract_property(QuantumTransformation({ComplexMatrix::diagonal({0.5, 0.0})})),
                 NotPropertyTransformation);
}

TEST(ExtractProperty, RoundtripOnRandomProjectors) {
    for (std::uint64_t i = 0; i < 50; ++i) {
        Rng rng = stream_for(103, i);
        const std::size_t d = 2 + i % 4;
        const std::size_t r = 1 + (i / 4) % (d - 1);
        const Property p = Property::from_matrix(random_projector_matrix(d, r, rng));
        const Property back = extract_property(from_property(p));
        EXPECT_EQ(back.rank(), r);
        EXPECT_LE(max_abs_diff(back.matrix(), p.matrix()), 1e-10);
    }
}

TEST(ExtractProperty, DerivationChainSteps) {
    for (std::uint64_t i = 0; i < 30; ++i) {
        Rng rng = stream_for(104, i);
        const std::size_t d = 2 + i % 4;
        const oracle::EMat p = oracle::to_eigen(random_projector_matrix(d, 1 + i % (d - 1), rng));
        const oracle::EMat e = oracle::swap(d);
        const oracle::EMat id = oracle::EMat::Identity(d, d);
        const oracle::EMat pi = oracle::naive_kron(p, id);
        const oracle::EMat step1 = oracle::trace_out_first(pi * e * pi, d, d);
        const oracle::EMat step2 = oracle::trace_out_first(e * oracle::naive_kron(p, p), d, d);
        const oracle::EMat step3 = p * oracle::trace_out_first(e, d, d) * p;
        EXPECT_LE((oracle::trace_out_first(e, d, d) - id).norm(), 1e-10);
        EXPECT_LE((step1 - step2).norm(), 1e-10);
        EXPECT_LE((step2 - step3).norm(), 1e-10);
        EXPECT_LE((step3 - p).norm(), 1e-10);
        // The library's route.
        const ComplexMatrix lifted =
            apply_to_first_factor(from_property(Property::from_matrix(oracle::from_eigen(p))), swap_operator(d));
        EXPECT_LE(oracle::diff(lifted, pi * e * pi), 1e-12);
    }
}

TEST(Rigidity, AdmissibleRepeatableAtomicMapsArePhasedProjectors) {
    // Oblique idempotents [[1, a], [0, 0]] with a != 0 are never admissible.
    for (double a : {1e-3, 0.1, 1.0, 5.0}) {
        const ComplexMatrix k{{1.0, a}, {0.0, 0.0}};
        EXPECT_LE(max_abs_diff(matmul(k, k), k), 0.0);
        EXPECT_GT(eigh(matmul(adjoint(k), k)).values.back(), 1.0 + 1e-9);
        EXPECT_THROW(QuantumTransformation({k}), InvariantViolation);
    }
    // Random oblique idempotents S diag(1_r, 0) S^-1, scaled by a phase.
    for (std::uint64_t i = 0; i < 50; ++i) {
        Rng rng = stream_for(105, i);
        const std::size_t d = 2 + i % 3;
        const oracle::EMat s = oracle::to_eigen(ginibre(d, d, rng));
        oracle::EMat diag = oracle::EMat::Zero(d, d);
        diag(0, 0) = 1.0;
        const oracle::EMat k = std::polar(1.0, 0.7 * double(i)) * (s * diag * s.inverse());
        const ComplexMatrix km = oracle::from_eigen(k);
        bool admissible = true;
        try {
            const QuantumTransformation t({km});
            EXPECT_TRUE(is_repeatable(t));
        } catch (const InvariantViolation &) {
            admissible = false;
        }
        // Whatever survives admissibility must be phase times an orthogonal projector.
        if (admissible) {
            const Complex lambda = k.trace() / std::abs(k.trace());
            EXPECT_TRUE(oracle::is_orthogonal_projector(k / lambda, 1e-8));
        }
    }
    // And the converse: phase times projector is admissible and repeatable.
    for (std::uint64_t i = 0; i < 20; ++i) {
        Rng rng = stream_for(106, i);
        const ComplexMatrix p = random_projector_matrix(3, 1 + i % 2, rng);
        const QuantumTransformation t({p * std::polar(1.0, 0.3 * double(i))});
        EXPECT_TRUE(is_repeatable(t));
        EXPECT_LE(max_abs_diff(extract_property(t).matrix(), p), 1e-10);
    }
}
