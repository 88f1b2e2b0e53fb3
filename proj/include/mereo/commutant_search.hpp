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

#ifndef MEREO_COMMUTANT_SEARCH_HPP
#define MEREO_COMMUTANT_SEARCH_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "mereo/doubleket.hpp"
#include "mereo/holism.hpp"
#include "mereo/property.hpp"

namespace mereo {

/// Lower bound on ||P G Q^T||_F enforced by the hinge penalty when
/// exclude_exclusive is set.
inline constexpr double kExclusionFloor = 0.05;

struct SearchConfig {
    std::size_t rank_p = 1;
    std::size_t rank_q = 1;
    std::size_t restarts = 32;
    std::size_t max_iters = 500;
    double step_init = 0.5;
    double grad_tol = 1e-10;
    bool exclude_exclusive = false;
    std::uint64_t rng_seed = 0;
};

/// Throws std::invalid_argument unless 0 < rank_p < d_a and 0 < rank_q < d_b.
void validate(const SearchConfig &cfg, SystemDims dims);

struct SearchResult {
    /// ||[P (x) Q, |G>><<G|]||_F at the argmin of the objective.
    double min_value;
    /// Objective (squared commutator plus penalty) at the argmin.
    double objective_value;
    Property argmin_p;
    Property argmin_q;
    /// Iterations spent by the winning restart.
    std::size_t iterations_used;
    bool converged;
    /// ||P G Q^T||_F at the argmin.
    double cooccurrence_weight;
};

/// Number of real parameters of a d x d Hermitian generator.
inline std::size_t projector_param_count(std::size_t d) { return d * d; }

/// Hermitian generator from params: the first d entries are the diagonal, then
/// one (re, im) pair per upper-triangular entry (j < l) in row-major order.
ComplexMatrix hermitian_from_params(std::span<const double> params, std::size_t d);

/// P = U diag(1_rank, 0) U^dag with U = exp(i H(params)).
Property parametrize_projector(std::span<const double> params, std::size_t d, std::size_t rank);

/// A right inverse of parametrize_projector: parameters whose projector is p
/// (at rank p.rank()). The generator is pi times a projector, so exp(iH) is a
/// reflection carrying span(e_1..e_rank) onto the range of p.
std::vector<double> params_for_projector(const Property &p);

/// ||[P (x) Q, |G>><<G|]||_F^2, plus max(0, floor - ||P G Q^T||_F)^2 when
/// cfg.exclude_exclusive is set.
double objective(const GammaOperator &g, const Property &p, const Property &q, const SearchConfig &cfg);

struct ObjectiveEvaluation {
    double value;
    std::vector<double> gradient;  ///< d_a^2 entries for P, then d_b^2 for Q
};

/// Objective and its analytic gradient with respect to the stacked generator
/// parameters (params_p, params_q).
ObjectiveEvaluation objective_with_gradient(const GammaOperator &g, std::span<const double> params,
                                            const SearchConfig &cfg);

/// Multi-restart gradient descent with backtracking over both generators.
SearchResult minimize(const GammaOperator &g, const SearchConfig &cfg);

struct GridResult {
    double min_value;        ///< commutator norm at the grid argmin of the objective
    double objective_value;  ///< grid minimum of the objective
    double theta_p;
    double phi_p;
    double theta_q;
    double phi_q;
};

/// |psi> = (cos(theta/2), e^{i phi} sin(theta/2)).
ComplexMatrix bloch_projector(double theta, double phi);

/// Exhaustive scan of rank-one pairs at d_a = d_b = 2. theta runs over
/// `resolution` points in [0, pi] inclusive, phi over `resolution` points in
/// [0, 2 pi). The objective is evaluated through (P (x) Q)|G>> directly.
GridResult brute_force_grid_d2(const GammaOperator &g, std::size_t resolution, bool exclude_exclusive);

struct DensitySample {
    std::size_t index;
    double smallest_singular_value;
    bool holistic_atleastone;
    bool holistic_both;
};

struct DensityReport {
    SystemDims dims;
    std::size_t samples;
    std::uint64_t rng_seed;
    double fraction_atleastone;
    double fraction_both;
    double fraction_below_tol_rank;
    /// Equal-width bins of the smallest singular value over [0, 1/sqrt(min(d_a, d_b))].
    std::vector<std::size_t> histogram;
    double histogram_upper;
    std::vector<DensitySample> rows;
};

/// Samples Ginibre Gammas (sample i uses stream_for(seed, i)), normalizes them
/// and certifies each under both conventions.
DensityReport density_scan(SystemDims dims, std::size_t samples, std::uint64_t rng_seed,
                           const Tolerances &tol = default_tolerances(), std::size_t histogram_bins = 20);

}  // namespace mereo

#endif  // MEREO_COMMUTANT_SEARCH_HPP
