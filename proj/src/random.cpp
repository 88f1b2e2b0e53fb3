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

#include "mereo/random.hpp"

#include <cmath>

namespace mereo {

Rng stream_for(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng &rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix m(rows, cols);
    for (auto &z : m.entries()) {
        const double re = normal(rng);
        const double im = normal(rng);
        z = Complex(re, im);
    }
    return m;
}

ComplexMatrix random_unit_vector(std::size_t n, Rng &rng) {
    ComplexMatrix v = ginibre(n, 1, rng);
    v *= 1.0 / frobenius_norm(v);
    return v;
}

ComplexMatrix random_projector_matrix(std::size_t n, std::size_t rank, Rng &rng) {
    ComplexMatrix p(n, n);
    if (rank == 0) {
        return p;
    }
    const SingularValueDecomposition s = svd(ginibre(n, rank, rng));
    for (std::size_t c = 0; c < rank; ++c) {
        const ComplexMatrix u = s.u.col(c);
        p += outer(u, u);
    }
    return 0.5 * (p + adjoint(p));
}

}  // namespace mereo
