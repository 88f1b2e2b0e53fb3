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

#ifndef MEREO_RANDOM_HPP
#define MEREO_RANDOM_HPP

#include <cstdint>
#include <random>

#include "mereo/linalg.hpp"

namespace mereo {

using Rng = std::mt19937_64;

/// Independent stream for work item `index` of a run seeded with `seed`.
/// Results never depend on how items are scheduled.
Rng stream_for(std::uint64_t seed, std::uint64_t index);

/// I.i.d. standard complex Gaussian entries (real and imaginary parts each
/// N(0, 1/2)).
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng &rng);

/// Haar-ish random unit column vector (normalized Gaussian).
ComplexMatrix random_unit_vector(std::size_t n, Rng &rng);

/// Random orthogonal projector of the given rank (range of a Ginibre block).
ComplexMatrix random_projector_matrix(std::size_t n, std::size_t rank, Rng &rng);

}  // namespace mereo

#endif  // MEREO_RANDOM_HPP
