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

#include "mereo/commutant_search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "mereo/random.hpp"

namespace mereo {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix &x) { return 0.5 * (x + adjoint(x)); }

// sin(x)/x, accurate near 0.
double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        return 1.0 - x * x / 6.0;
    }
    return std::sin(x) / x;
}

// Local chart of the projector manifold at params: the eigensystem of the
// generator H, the unitary U = exp(iH) and P = U D U^dag.
struct ProjectorChart {
    std::size_t rank;
    EigenDecomposition generator;
    ComplexMatrix unitary;
    ComplexMatrix projector;
};

ProjectorChart make_chart(std::span<const double> params, std::size_t d, std::size_t rank) {
    const ComplexMatrix h = hermitian_from_params(params, d);
    EigenDecomposition e = eigh(h);
    ComplexMatrix phases(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        phases(j, j) = std::polar(1.0, e.values[j]);
    }
    ComplexMatrix u = matmul(matmul(e.vectors, phases), adjoint(e.vectors));
    ComplexMatrix p(d, d);
    for (std::size_t c = 0; c < rank; ++c) {
        const ComplexMatrix col = u.col(c);
        p += outer(col, col);
    }
    return {rank, std::move(e), std::move(u), hermitian_part(p)};
}

// Gradient of f with respect to the generator parameters, given a Hermitian
// W with df = Tr(W dP). Uses the Daleckii-Krein form of d exp(iH):
//   dU = V [(i V^dag dH V) o Phi] V^dag,  Phi_jl = (e^{i l_j} - e^{i l_l}) / (i (l_j - l_l)).
void chart_gradient(const ProjectorChart &chart, const ComplexMatrix &w, std::span<double> out) {
    const std::size_t d = chart.unitary.rows();
    const ComplexMatrix &v = chart.generator.vectors;
    const std::vector<double> &lambda = chart.generator.values;

    // X = D U^dag W, where D keeps the first `rank` rows.
    ComplexMatrix x = matmul(adjoint(chart.unitary), w);
    for (std::size_t r = chart.rank; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            x(r, c) = 0.0;
        }
    }
    const ComplexMatrix z = matmul(matmul(adjoint(v), x), v);
    ComplexMatrix b(d, d);
    const Complex i_unit(0.0, 1.0);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t l = 0; l < d; ++l) {
            const double half_gap = 0.5 * (lambda[j] - lambda[l]);
            const Complex phi = std::polar(sinc(half_gap), 0.5 * (lambda[j] + lambda[l]));
            b(j, l) = i_unit * z(l, j) * phi;
        }
    }
    // df/dtheta_k = 2 Re sum_ab K_ab R_ab with R = conj(V) B V^T.
    const ComplexMatrix r = matmul(matmul(conjugate(v), b), transpose_canonical(v));
    std::size_t k = 0;
    for (std::size_t j = 0; j < d; ++j) {
        out[k++] = 2.0 * r(j, j).real();
    }
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t l = j + 1; l < d; ++l) {
            out[k++] = 2.0 * (r(j, l) + r(l, j)).real();
            out[k++] = 2.0 * (i_unit * (r(j, l) - r(l, j))).real();
        }
    }
}

double squared_norm(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) {
        acc += v * v;
    }
    return acc;
}

struct RestartOutcome {
    std::vector<double> params;
    double value;
    std::size_t iterations;
    bool converged;
};

RestartOutcome descend(const GammaOperator &g, std::vector<double> x, const SearchConfig &cfg) {
    constexpr double kArmijo = 1e-4;
    constexpr double kValueFloor = 1e-26;
    constexpr int kMaxHalvings = 60;

    ObjectiveEvaluation cur = objective_with_gradient(g, x, cfg);
    double step = cfg.step_init;
    std::size_t it = 0;
    bool converged = false;
    std::vector<double> trial(x.size());
    for (; it < cfg.max_iters; ++it) {
        const double g2 = squared_norm(cur.gradient);
        if (std::sqrt(g2) <= cfg.grad_tol || cur.value <= kValueFloor) {
            converged = true;
            break;
        }
        bool accepted = false;
        ObjectiveEvaluation next{};
        for (int h = 0; h < kMaxHalvings; ++h) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                trial[i] = x[i] - step * cur.gradient[i];
            }
            next = objective_with_gradient(g, trial, cfg);
            if (next.value <= cur.value - kArmijo * step * g2) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // No decrease at any step length: stationary to working precision.
            converged = true;
            break;
        }
        // Barzilai-Borwein estimate for the next trial step.
        double ss = 0.0;
        double sy = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double s = trial[i] - x[i];
            const double y = next.gradient[i] - cur.gradient[i];
            ss += s * s;
            sy += s * y;
        }
        step = sy > 0.0 ? std::clamp(ss / sy, 1e-10, 1e4) : cfg.step_init;
        x = trial;
        cur = std::move(next);
    }
    return {std::move(x), cur.value, it, converged};
}

}  // namespace

void validate(const SearchConfig &cfg, SystemDims dims) {
    if (cfg.rank_p == 0 || cfg.rank_p >= dims.a || cfg.rank_q == 0 || cfg.rank_q >= dims.b) {
        throw std::invalid_argument("SearchConfig: ranks (" + std::to_string(cfg.rank_p) + ", " +
                                    std::to_string(cfg.rank_q) + ") must be nontrivial for dims (" +
                                    std::to_string(dims.a) + ", " + std::to_string(dims.b) + ")");
    }
    if (cfg.restarts == 0 || cfg.max_iters == 0 || !(cfg.step_init > 0.0) || !(cfg.grad_tol > 0.0)) {
        throw std::invalid_argument("SearchConfig: restarts, max_iters, step_init and grad_tol must be positive");
    }
}

ComplexMatrix hermitian_from_params(std::span<const double> params, std::size_t d) {
    if (params.size() != projector_param_count(d)) {
        throw DimensionError("hermitian_from_params: expected " + std::to_string(projector_param_count(d)) +
                             " parameters, got " + std::to_string(params.size()));
    }
    ComplexMatrix h(d, d);
    std::size_t k = 0;
    for (std::size_t j = 0; j < d; ++j) {
        h(j, j) = params[k++];
    }
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t l = j + 1; l < d; ++l) {
            const Complex z(params[k], params[k + 1]);
            k += 2;
            h(j, l) = z;
            h(l, j) = std::conj(z);
        }
    }
    return h;
}

Property parametrize_projector(std::span<const double> params, std::size_t d, std::size_t rank) {
    if (rank > d) {
        throw DimensionError("parametrize_projector: rank exceeds dimension");
    }
    return Property::from_matrix(make_chart(params, d, rank).projector);
}

std::vector<double> params_for_projector(const Property &p) {
    const std::size_t d = p.dim();
    const std::size_t r = p.rank();
    std::vector<double> out(projector_param_count(d));
    if (r == 0) {
        return out;
    }
    const EigenDecomposition e = eigh(p.matrix());
    // Orthonormal basis of the range: eigenvectors for eigenvalue 1 (the last r).
    ComplexMatrix y(d, r);
    ComplexMatrix m(r, r);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t c = 0; c < r; ++c) {
            y(i, c) = e.vectors(i, d - r + c);
            if (i < r) {
                m(i, c) = y(i, c);
            }
        }
    }
    // Principal vector pairs (x_k, y_k) with <x_k|y_k> = sigma_k >= 0. The
    // differences x_k - y_k are mutually orthogonal, and reflecting across
    // each one exchanges the pair.
    ComplexMatrix h(d, d);
    const SingularValueDecomposition s = svd(m);
    for (std::size_t k = 0; k < r; ++k) {
        ComplexMatrix diff = matmul(y, s.v.col(k)) * -1.0;
        for (std::size_t i = 0; i < r; ++i) {
            diff(i, 0) += s.u(i, k);
        }
        const double n = frobenius_norm(diff);
        if (n > 1e-12) {
            diff *= 1.0 / n;
            h += std::numbers::pi * outer(diff, diff);
        }
    }
    std::size_t k = 0;
    for (std::size_t j = 0; j < d; ++j) {
        out[k++] = h(j, j).real();
    }
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t l = j + 1; l < d; ++l) {
            out[k++] = h(j, l).real();
            out[k++] = h(j, l).imag();
        }
    }
    return out;
}

double objective(const GammaOperator &g, const Property &p, const Property &q, const SearchConfig &cfg) {
    const SystemDims dims = g.dims();
    if (p.dim() != dims.a || q.dim() != dims.b) {
        throw DimensionError("objective: P, Q do not match Gamma's dims");
    }
    const ComplexMatrix ket = vec(g).vector;
    const double comm = frobenius_norm(commutator(kron(p.matrix(), q.matrix()), outer(ket, ket)));
    double f = comm * comm;
    if (cfg.exclude_exclusive) {
        const double w =
            frobenius_norm(matmul(matmul(p.matrix(), g.matrix()), transpose_canonical(q.matrix())));
        const double gap = std::max(0.0, kExclusionFloor - w);
        f += gap * gap;
    }
    return f;
}

ObjectiveEvaluation objective_with_gradient(const GammaOperator &g, std::span<const double> params,
                                            const SearchConfig &cfg) {
    const SystemDims dims = g.dims();
    const std::size_t np = projector_param_count(dims.a);
    const std::size_t nq = projector_param_count(dims.b);
    if (params.size() != np + nq) {
        throw DimensionError("objective_with_gradient: wrong parameter count");
    }
    const ProjectorChart cp = make_chart(params.subspan(0, np), dims.a, cfg.rank_p);
    const ProjectorChart cq = make_chart(params.subspan(np, nq), dims.b, cfg.rank_q);
    const ComplexMatrix &p = cp.projector;
    const ComplexMatrix &q = cq.projector;

    const ComplexMatrix ket = vec(g).vector;
    const ComplexMatrix pi = outer(ket, ket);
    const ComplexMatrix a = kron(p, q);
    const ComplexMatrix c = commutator(a, pi);
    const double comm = frobenius_norm(c);

    ObjectiveEvaluation out{comm * comm, std::vector<double>(np + nq)};

    // d||C||^2 = 2 Re Tr(G dA), G = Pi C^dag - C^dag Pi; dA is Hermitian so
    // only G + G^dag contributes.
    const ComplexMatrix cd = adjoint(c);
    const ComplexMatrix gm = matmul(pi, cd) - matmul(cd, pi);
    const ComplexMatrix gh = gm + adjoint(gm);
    ComplexMatrix wp = hermitian_part(
        partial_trace(matmul(gh, kron(ComplexMatrix::identity(dims.a), q)), dims, TraceOut::Second));
    ComplexMatrix wq = hermitian_part(
        partial_trace(matmul(gh, kron(p, ComplexMatrix::identity(dims.b))), dims, TraceOut::First));

    if (cfg.exclude_exclusive) {
        const ComplexMatrix qt = transpose_canonical(q);
        const ComplexMatrix m = matmul(matmul(p, g.matrix()), qt);
        const double w = frobenius_norm(m);
        const double gap = kExclusionFloor - w;
        if (gap > 0.0) {
            out.value += gap * gap;
            if (w > 0.0) {
                // d(gap^2) = -2 gap dw, dw = Re Tr(M^dag dM) / w.
                const double coef = -2.0 * gap / w;
                const ComplexMatrix md = adjoint(m);
                wp += coef * hermitian_part(matmul(matmul(g.matrix(), qt), md));
                wq += coef * hermitian_part(transpose_canonical(matmul(matmul(md, p), g.matrix())));
            }
        }
    }

    chart_gradient(cp, wp, std::span<double>(out.gradient).subspan(0, np));
    chart_gradient(cq, wq, std::span<double>(out.gradient).subspan(np, nq));
    return out;
}

SearchResult minimize(const GammaOperator &g, const SearchConfig &cfg) {
    const SystemDims dims = g.dims();
    validate(cfg, dims);
    const std::size_t np = projector_param_count(dims.a);

    std::optional<RestartOutcome> best;
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        // Haar-distributed starting projectors. Uniform generator entries are
        // not Haar and starve some basins for singular Gamma.
        Rng rng = stream_for(cfg.rng_seed, r);
        std::vector<double> x0 =
            params_for_projector(Property::from_matrix(random_projector_matrix(dims.a, cfg.rank_p, rng)));
        const std::vector<double> xq =
            params_for_projector(Property::from_matrix(random_projector_matrix(dims.b, cfg.rank_q, rng)));
        x0.insert(x0.end(), xq.begin(), xq.end());
        RestartOutcome outcome = descend(g, std::move(x0), cfg);
        if (!best || outcome.value < best->value) {
            best = std::move(outcome);
        }
    }

    const std::span<const double> params(best->params);
    Property p = parametrize_projector(params.subspan(0, np), dims.a, cfg.rank_p);
    Property q = parametrize_projector(params.subspan(np), dims.b, cfg.rank_q);
    const ComplexMatrix ket = vec(g).vector;
    const double comm = frobenius_norm(commutator(kron(p.matrix(), q.matrix()), outer(ket, ket)));
    const double weight = frobenius_norm(matmul(matmul(p.matrix(), g.matrix()), transpose_canonical(q.matrix())));
    return SearchResult{.min_value = comm,
                        .objective_value = best->value,
                        .argmin_p = std::move(p),
                        .argmin_q = std::move(q),
                        .iterations_used = best->iterations,
                        .converged = best->converged,
                        .cooccurrence_weight = weight};
}

ComplexMatrix bloch_projector(double theta, double phi) {
    const ComplexMatrix psi = ComplexMatrix::column({std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)});
    return outer(psi, psi);
}

GridResult brute_force_grid_d2(const GammaOperator &g, std::size_t resolution, bool exclude_exclusive) {
    if (g.dims() != SystemDims{2, 2}) {
        throw DimensionError("brute_force_grid_d2: requires dims (2, 2)");
    }
    if (resolution < 2) {
        throw std::invalid_argument("brute_force_grid_d2: resolution must be at least 2");
    }
    const double pi = std::numbers::pi;
    std::vector<double> thetas(resolution);
    std::vector<double> phis(resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        thetas[i] = pi * static_cast<double>(i) / static_cast<double>(resolution - 1);
        phis[i] = 2.0 * pi * static_cast<double>(i) / static_cast<double>(resolution);
    }
    struct Point {
        double theta;
        double phi;
        std::array<Complex, 4> m;
    };
    std::vector<Point> points;
    points.reserve(resolution * resolution);
    for (double t : thetas) {
        for (double f : phis) {
            const ComplexMatrix pm = bloch_projector(t, f);
            points.push_back({t, f, {pm(0, 0), pm(0, 1), pm(1, 0), pm(1, 1)}});
        }
    }
    const std::array<Complex, 4> ket{g.matrix()(0, 0), g.matrix()(0, 1), g.matrix()(1, 0), g.matrix()(1, 1)};

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_p = 0;
    std::size_t best_q = 0;
    for (std::size_t ip = 0; ip < points.size(); ++ip) {
        const auto &pm = points[ip].m;
        for (std::size_t iq = 0; iq < points.size(); ++iq) {
            const auto &qm = points[iq].m;
            // u = (P (x) Q) ket with explicit Kronecker entries.
            std::array<Complex, 4> u{};
            for (std::size_t row = 0; row < 4; ++row) {
                const std::size_t i = row / 2;
                const std::size_t k = row % 2;
                Complex acc{};
                for (std::size_t col = 0; col < 4; ++col) {
                    const std::size_t j = col / 2;
                    const std::size_t l = col % 2;
                    acc += pm[i * 2 + j] * qm[k * 2 + l] * ket[col];
                }
                u[row] = acc;
            }
            double au = 0.0;
            Complex overlap{};
            for (std::size_t row = 0; row < 4; ++row) {
                au += std::norm(u[row]);
                overlap += std::conj(ket[row]) * u[row];
            }
            // ||[A, |g><g|]||^2 = 2 ||A g||^2 - 2 |<g|A g>|^2 for Hermitian A.
            double f = std::max(0.0, 2.0 * au - 2.0 * std::norm(overlap));
            if (exclude_exclusive) {
                const double gap = std::max(0.0, kExclusionFloor - std::sqrt(au));
                f += gap * gap;
            }
            if (f < best) {
                best = f;
                best_p = ip;
                best_q = iq;
            }
        }
    }
    const Point &bp = points[best_p];
    const Point &bq = points[best_q];
    const ComplexMatrix ket_col = vec(g).vector;
    const double comm = frobenius_norm(commutator(
        kron(bloch_projector(bp.theta, bp.phi), bloch_projector(bq.theta, bq.phi)), outer(ket_col, ket_col)));
    return {comm, best, bp.theta, bp.phi, bq.theta, bq.phi};
}

DensityReport density_scan(SystemDims dims, std::size_t samples, std::uint64_t rng_seed, const Tolerances &tol,
                           std::size_t histogram_bins) {
    if (samples == 0) {
        throw std::invalid_argument("density_scan: samples must be positive");
    }
    if (histogram_bins == 0) {
        throw std::invalid_argument("density_scan: need at least one histogram bin");
    }
    DensityReport report{.dims = dims,
                         .samples = samples,
                         .rng_seed = rng_seed,
                         .fraction_atleastone = 0.0,
                         .fraction_both = 0.0,
                         .fraction_below_tol_rank = 0.0,
                         .histogram = std::vector<std::size_t>(histogram_bins, 0),
                         .histogram_upper = 1.0 / std::sqrt(static_cast<double>(std::min(dims.a, dims.b))),
                         .rows = {}};
    report.rows.reserve(samples);
    std::size_t n_atleastone = 0;
    std::size_t n_both = 0;
    std::size_t n_below = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        Rng rng = stream_for(rng_seed, i);
        const GammaOperator g = GammaOperator::normalized(ginibre(dims.a, dims.b, rng));
        const double smallest = g.singular_values().back();
        const bool h_atl = certify_rank1(g, Nontriviality::AtLeastOne, tol).cooccurrence_holistic;
        const bool h_both = certify_rank1(g, Nontriviality::Both, tol).cooccurrence_holistic;
        n_atleastone += h_atl;
        n_both += h_both;
        n_below += smallest <= tol.rank;
        const auto bin = std::min<std::size_t>(
            histogram_bins - 1,
            static_cast<std::size_t>(smallest / report.histogram_upper * static_cast<double>(histogram_bins)));
        ++report.histogram[bin];
        report.rows.push_back({i, smallest, h_atl, h_both});
    }
    const double total = static_cast<double>(samples);
    report.fraction_atleastone = static_cast<double>(n_atleastone) / total;
    report.fraction_both = static_cast<double>(n_both) / total;
    report.fraction_below_tol_rank = static_cast<double>(n_below) / total;
    return report;
}

}  // namespace mereo
