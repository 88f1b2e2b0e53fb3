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

#include "mereo/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mereo/random.hpp"
#include "mereo/transform.hpp"

namespace mereo {

using nlohmann::json;

namespace {

class PhaseTimer {
   public:
    explicit PhaseTimer(json &sink) : sink_(sink) {}

    void mark(const std::string &phase) {
        const auto now = std::chrono::steady_clock::now();
        sink_[phase] = std::chrono::duration<double>(now - last_).count();
        last_ = now;
    }

   private:
    json &sink_;
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string short_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

RunReport named_report(std::string command) {
    RunReport rep;
    rep.command = std::move(command);
    return rep;
}

json dims_to_json(SystemDims d) { return json::array({d.a, d.b}); }

json product_property_to_json(const ProductProperty &pp, std::optional<double> replay) {
    json j;
    j["p"] = matrix_to_json(pp.p().matrix());
    j["q"] = matrix_to_json(pp.q().matrix());
    j["rank_p"] = pp.p().rank();
    j["rank_q"] = pp.q().rank();
    j["replay_commutator_norm"] = replay ? json(*replay) : json(nullptr);
    return j;
}

std::vector<Nontriviality> conventions_for(ConventionChoice c) {
    switch (c) {
        case ConventionChoice::AtLeastOne:
            return {Nontriviality::AtLeastOne};
        case ConventionChoice::Both:
            return {Nontriviality::Both};
        case ConventionChoice::BothReport:
            return {Nontriviality::AtLeastOne, Nontriviality::Both};
    }
    return {};
}

json config_base(const Tolerances &tol) {
    json j;
    j["tolerances"] = tolerances_to_json(tol);
    return j;
}

}  // namespace

json matrix_to_json(const ComplexMatrix &m) {
    json re = json::array();
    json im = json::array();
    for (const auto &z : m.entries()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const json &j) {
    try {
        if (!j.is_object()) {
            throw InputError("matrix JSON must be an object");
        }
        const auto rows = j.at("rows").get<std::size_t>();
        const auto cols = j.at("cols").get<std::size_t>();
        const auto re = j.at("re").get<std::vector<double>>();
        std::vector<double> im(re.size(), 0.0);
        if (j.contains("im")) {
            im = j.at("im").get<std::vector<double>>();
        }
        if (rows == 0 || cols == 0 || re.size() != rows * cols || im.size() != rows * cols) {
            throw InputError("matrix JSON: re/im must hold rows*cols entries");
        }
        std::vector<Complex> entries(rows * cols);
        for (std::size_t i = 0; i < entries.size(); ++i) {
            entries[i] = Complex(re[i], im[i]);
        }
        return ComplexMatrix(rows, cols, std::move(entries));
    } catch (const json::exception &e) {
        throw InputError(std::string("matrix JSON: ") + e.what());
    } catch (const DimensionError &e) {
        throw InputError(std::string("matrix JSON: ") + e.what());
    } catch (const InputError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw InputError(std::string("matrix JSON: ") + e.what());
    }
}

json tolerances_to_json(const Tolerances &tol) {
    return json{{"herm", tol.herm},
                {"recon", tol.recon},
                {"rank", tol.rank},
                {"compat", tol.compat},
                {"support", tol.support}};
}

Tolerances apply_tolerance_override(const Tolerances &base, const json &override_obj) {
    if (!override_obj.is_object()) {
        throw InputError("tolerance override must be a JSON object");
    }
    Tolerances tol = base;
    for (const auto &[key, value] : override_obj.items()) {
        if (!value.is_number() || !(value.get<double>() > 0.0)) {
            throw InputError("tolerance override '" + key + "' must be a positive number");
        }
        const double x = value.get<double>();
        if (key == "herm") {
            tol.herm = x;
        } else if (key == "recon") {
            tol.recon = x;
        } else if (key == "rank") {
            tol.rank = x;
        } else if (key == "compat") {
            tol.compat = x;
        } else if (key == "support") {
            tol.support = x;
        } else {
            throw InputError("unknown tolerance '" + key + "'");
        }
    }
    return tol;
}

Tolerances tolerances_from_environment(const Tolerances &base) {
    const char *raw = std::getenv("MEREO_TOL_OVERRIDE");
    if (raw == nullptr || *raw == '\0') {
        return base;
    }
    json parsed;
    try {
        parsed = json::parse(raw);
    } catch (const json::exception &e) {
        throw InputError(std::string("MEREO_TOL_OVERRIDE: ") + e.what());
    }
    return apply_tolerance_override(base, parsed);
}

ComplexMatrix preset_matrix(std::string_view name) {
    if (name == "bell2") {
        return ComplexMatrix::identity(2) * (1.0 / std::sqrt(2.0));
    }
    if (name == "product2") {
        return ComplexMatrix::diagonal({1.0, 0.0});
    }
    if (name == "maxent3") {
        return ComplexMatrix::identity(3) * (1.0 / std::sqrt(3.0));
    }
    throw InputError("unknown preset '" + std::string(name) + "' (expected bell2, product2 or maxent3)");
}

GammaOperator resolve_gamma(const GammaSource &src) {
    ComplexMatrix m = [&] {
        switch (src.kind) {
            case GammaSource::Kind::Preset:
                return preset_matrix(src.preset);
            case GammaSource::Kind::Random: {
                if (src.dims.a == 0 || src.dims.b == 0) {
                    throw InputError("random Gamma needs positive dims");
                }
                Rng rng = stream_for(src.seed, 0);
                return ginibre(src.dims.a, src.dims.b, rng);
            }
            case GammaSource::Kind::File: {
                std::ifstream in(src.path);
                if (!in) {
                    throw InputError("cannot open Gamma file '" + src.path + "'");
                }
                json j;
                try {
                    in >> j;
                } catch (const json::exception &e) {
                    throw InputError("Gamma file '" + src.path + "': " + e.what());
                }
                return matrix_from_json(j);
            }
        }
        throw InputError("unknown Gamma source");
    }();
    if (frobenius_norm(m) == 0.0) {
        throw InputError("Gamma is the zero matrix");
    }
    return GammaOperator::normalized(std::move(m));
}

json gamma_source_to_json(const GammaSource &src) {
    switch (src.kind) {
        case GammaSource::Kind::Preset:
            return json{{"kind", "preset"}, {"preset", src.preset}};
        case GammaSource::Kind::Random:
            return json{{"kind", "random"}, {"seed", src.seed}, {"dims", dims_to_json(src.dims)}};
        case GammaSource::Kind::File:
            return json{{"kind", "file"}, {"path", src.path}};
    }
    return nullptr;
}

ConventionChoice parse_convention(std::string_view s) {
    if (s == "atleastone") {
        return ConventionChoice::AtLeastOne;
    }
    if (s == "both") {
        return ConventionChoice::Both;
    }
    if (s == "bothreport") {
        return ConventionChoice::BothReport;
    }
    throw InputError("unknown convention '" + std::string(s) + "'");
}

std::string_view to_string(ConventionChoice c) {
    switch (c) {
        case ConventionChoice::AtLeastOne:
            return "atleastone";
        case ConventionChoice::Both:
            return "both";
        case ConventionChoice::BothReport:
            return "bothreport";
    }
    return "?";
}

json verdict_to_json(const HolismVerdict &v) {
    json j;
    j["convention"] = to_string(v.convention);
    j["dims"] = dims_to_json(v.dims);
    j["rank_of_gamma"] = v.rank_of_gamma;
    j["cooccurrence_holistic"] = v.cooccurrence_holistic;
    j["strictly_no_commuting_product"] = v.strictly_no_commuting_product;
    j["lambda1_witness"] =
        v.lambda1_witness ? product_property_to_json(*v.lambda1_witness, v.lambda1_replay_norm) : json(nullptr);
    j["lambda0_witness"] =
        v.lambda0_witness ? product_property_to_json(*v.lambda0_witness, v.lambda0_replay_norm) : json(nullptr);
    return j;
}

json search_result_to_json(const SearchResult &r) {
    return json{{"min_value", r.min_value},
                {"objective_value", r.objective_value},
                {"argmin_p", matrix_to_json(r.argmin_p.matrix())},
                {"argmin_q", matrix_to_json(r.argmin_q.matrix())},
                {"iterations_used", r.iterations_used},
                {"converged", r.converged},
                {"cooccurrence_weight", r.cooccurrence_weight}};
}

json RunReport::to_json() const {
    return json{{"command", command},
                {"version", kVersion},
                {"schema_version", kSchemaVersion},
                {"config_echo", config_echo},
                {"results", results},
                {"timings", timings},
                {"violations", violations}};
}

RunReport cmd_certify(const GammaSource &src, ConventionChoice convention, const Tolerances &tol) {
    RunReport rep = named_report("certify");
    PhaseTimer timer(rep.timings);
    rep.config_echo = config_base(tol);
    rep.config_echo["gamma"] = gamma_source_to_json(src);
    rep.config_echo["convention"] = to_string(convention);

    const GammaOperator g = resolve_gamma(src);
    timer.mark("load");
    rep.results["gamma"] = matrix_to_json(g.matrix());
    rep.results["singular_values"] = g.singular_values();
    rep.results["verdicts"] = json::array();
    for (Nontriviality n : conventions_for(convention)) {
        const HolismVerdict v = certify_rank1(g, n, tol);
        try {
            validate(v, tol);
        } catch (const InvariantViolation &e) {
            rep.violations.emplace_back(e.what());
        }
        rep.results["verdicts"].push_back(verdict_to_json(v));
        rep.summary.push_back(std::string("convention ") + std::string(to_string(n)) +
                              ": rank(Gamma) = " + std::to_string(v.rank_of_gamma) +
                              ", co-occurrence holistic = " + (v.cooccurrence_holistic ? "yes" : "no") +
                              ", exclusive witness = " + (v.lambda0_witness ? "yes" : "no"));
    }
    timer.mark("certify");
    return rep;
}

RunReport cmd_search(const GammaSource &src, const SearchOptions &opts, const Tolerances &tol) {
    RunReport rep = named_report("search");
    PhaseTimer timer(rep.timings);
    const SearchConfig &cfg = opts.config;
    rep.config_echo = config_base(tol);
    rep.config_echo["gamma"] = gamma_source_to_json(src);
    rep.config_echo["search"] = json{{"rank_p", cfg.rank_p},
                                     {"rank_q", cfg.rank_q},
                                     {"restarts", cfg.restarts},
                                     {"max_iters", cfg.max_iters},
                                     {"step_init", cfg.step_init},
                                     {"grad_tol", cfg.grad_tol},
                                     {"exclude_exclusive", cfg.exclude_exclusive},
                                     {"exclusion_floor", kExclusionFloor},
                                     {"rng_seed", cfg.rng_seed}};
    rep.config_echo["oracle"] = opts.oracle;
    rep.config_echo["oracle_resolution"] = opts.oracle_resolution;

    const GammaOperator g = resolve_gamma(src);
    validate(cfg, g.dims());
    timer.mark("load");

    const SearchResult r = minimize(g, cfg);
    timer.mark("minimize");
    rep.results["search"] = search_result_to_json(r);
    const ComplexMatrix ket = vec(g).vector;
    const double replay =
        frobenius_norm(commutator(kron(r.argmin_p.matrix(), r.argmin_q.matrix()), outer(ket, ket)));
    rep.results["replay_commutator_norm"] = replay;
    if (std::abs(replay - r.min_value) > 1e-8) {
        rep.violations.push_back("search result does not replay: " + format_double(replay) + " vs " +
                                 format_double(r.min_value));
    }
    rep.summary.push_back("min commutator norm = " + short_double(r.min_value) + " (objective " +
                          short_double(r.objective_value) + ", ||P G Q^T|| = " +
                          short_double(r.cooccurrence_weight) + ", converged " + (r.converged ? "yes" : "no") + ")");

    if (opts.oracle) {
        if (g.dims() == SystemDims{2, 2} && cfg.rank_p == 1 && cfg.rank_q == 1) {
            const GridResult grid = brute_force_grid_d2(g, opts.oracle_resolution, cfg.exclude_exclusive);
            rep.results["oracle"] = json{{"applicable", true},
                                         {"min_value", grid.min_value},
                                         {"objective_value", grid.objective_value},
                                         {"theta_p", grid.theta_p},
                                         {"phi_p", grid.phi_p},
                                         {"theta_q", grid.theta_q},
                                         {"phi_q", grid.phi_q},
                                         {"optimizer_minus_grid_objective", r.objective_value - grid.objective_value}};
            rep.summary.push_back("grid oracle: min commutator norm = " + short_double(grid.min_value) +
                                  " (objective " + short_double(grid.objective_value) + ")");
        } else {
            rep.results["oracle"] = json{{"applicable", false}};
            rep.summary.push_back("grid oracle only covers rank-(1,1) pairs at dims (2,2)");
        }
        timer.mark("oracle");
    }
    return rep;
}

std::string density_csv(const DensityReport &r) {
    std::ostringstream out;
    out << "sample_index,smallest_singular_value,holistic_atleastone,holistic_both\r\n";
    for (const auto &row : r.rows) {
        out << row.index << ',' << format_double(row.smallest_singular_value) << ','
            << (row.holistic_atleastone ? "true" : "false") << ',' << (row.holistic_both ? "true" : "false")
            << "\r\n";
    }
    return out.str();
}

DensityRun cmd_density(SystemDims dims, std::size_t samples, std::uint64_t seed, const Tolerances &tol) {
    DensityRun run{named_report("density"), {}};
    RunReport &rep = run.report;
    PhaseTimer timer(rep.timings);
    rep.config_echo = config_base(tol);
    rep.config_echo["dims"] = dims_to_json(dims);
    rep.config_echo["samples"] = samples;
    rep.config_echo["seed"] = seed;
    if (dims.a < 2 || dims.b < 2) {
        throw InputError("density: both dims must be at least 2");
    }
    if (samples == 0) {
        throw InputError("density: samples must be at least 1");
    }

    const DensityReport d = density_scan(dims, samples, seed, tol);
    timer.mark("scan");
    rep.results = json{{"samples", d.samples},
                       {"fraction_atleastone", d.fraction_atleastone},
                       {"fraction_both", d.fraction_both},
                       {"fraction_below_tol_rank", d.fraction_below_tol_rank},
                       {"histogram", d.histogram},
                       {"histogram_upper", d.histogram_upper}};
    run.csv = density_csv(d);
    timer.mark("csv");
    rep.summary.push_back("holistic fraction (atleastone) = " + short_double(d.fraction_atleastone));
    rep.summary.push_back("holistic fraction (both) = " + short_double(d.fraction_both));
    rep.summary.push_back("fraction with smallest singular value <= tol_rank = " +
                          short_double(d.fraction_below_tol_rank));
    return run;
}

RunReport cmd_lattice(const GammaSource &src, std::size_t k, std::uint64_t seed, const Tolerances &tol) {
    RunReport rep = named_report("lattice");
    PhaseTimer timer(rep.timings);
    rep.config_echo = config_base(tol);
    rep.config_echo["gamma"] = gamma_source_to_json(src);
    rep.config_echo["k"] = k;
    rep.config_echo["seed"] = seed;

    const GammaOperator g = resolve_gamma(src);
    if (k == 0 || k > g.dims().total()) {
        throw InputError("lattice: k must be in [1, " + std::to_string(g.dims().total()) + "]");
    }
    timer.mark("load");
    const std::vector<LatticeMember> members = holistic_lattice(g, k, seed, tol);
    timer.mark("build");

    const std::size_t n = g.dims().total();
    ComplexMatrix sum(n, n);
    json jm = json::array();
    std::size_t holistic_members = 0;
    for (const auto &m : members) {
        sum += m.property.matrix();
        json entry{{"gamma", matrix_to_json(m.gamma.matrix())},
                   {"property", matrix_to_json(m.property.matrix())},
                   {"singular_values", m.gamma.singular_values()},
                   {"verdicts", json::array()}};
        bool holistic_everywhere = true;
        for (Nontriviality conv : {Nontriviality::AtLeastOne, Nontriviality::Both}) {
            const HolismVerdict v = certify_rank1(m.gamma, conv, tol);
            try {
                validate(v, tol);
            } catch (const InvariantViolation &e) {
                rep.violations.emplace_back(e.what());
            }
            holistic_everywhere = holistic_everywhere && v.cooccurrence_holistic;
            entry["verdicts"].push_back(verdict_to_json(v));
        }
        holistic_members += holistic_everywhere;
        jm.push_back(std::move(entry));
    }

    json commutators = json::array();
    json exclusive = json::array();
    double max_comm = 0.0;
    bool all_exclusive = true;
    for (std::size_t i = 0; i < k; ++i) {
        json crow = json::array();
        json erow = json::array();
        for (std::size_t j = 0; j < k; ++j) {
            const Compatibility c = compatible(members[i].property, members[j].property, tol);
            crow.push_back(c.commutator_norm);
            const bool ex = i != j && mutually_exclusive(members[i].property, members[j].property, tol);
            erow.push_back(ex);
            max_comm = std::max(max_comm, c.commutator_norm);
            all_exclusive = all_exclusive && (i == j || ex);
        }
        commutators.push_back(std::move(crow));
        exclusive.push_back(std::move(erow));
    }
    if (max_comm > tol.compat) {
        rep.violations.push_back("lattice members do not commute (max norm " + format_double(max_comm) + ")");
    }
    if (!all_exclusive) {
        rep.violations.emplace_back("lattice members are not pairwise mutually exclusive");
    }
    const double idem = frobenius_norm(matmul(sum, sum) - sum);
    rep.results = json{{"members", std::move(jm)},
                       {"pairwise_commutator_norms", std::move(commutators)},
                       {"pairwise_mutually_exclusive", std::move(exclusive)},
                       {"sum_idempotency_defect", idem},
                       {"sum_rank", static_cast<std::size_t>(std::lround(trace(sum).real()))},
                       {"sum_identity_deviation", frobenius_norm(sum - ComplexMatrix::identity(n))},
                       {"holistic_members", holistic_members}};
    timer.mark("check");
    rep.summary.push_back(std::to_string(k) + " members, max pairwise commutator " + short_double(max_comm) + ", " +
                          std::to_string(holistic_members) + " certified holistic under both conventions");
    return rep;
}

RunReport cmd_entropy(const GammaSource &src, const Tolerances &tol) {
    RunReport rep = named_report("entropy");
    PhaseTimer timer(rep.timings);
    rep.config_echo = config_base(tol);
    rep.config_echo["gamma"] = gamma_source_to_json(src);

    const GammaOperator g = resolve_gamma(src);
    timer.mark("load");
    const MarginalEntropy e = marginal_entropy(g);
    const ComplexMatrix whole = make_holistic(g).matrix();
    const double s_a = von_neumann_entropy(partial_trace(whole, g.dims(), TraceOut::Second), tol);
    const double s_b = von_neumann_entropy(partial_trace(whole, g.dims(), TraceOut::First), tol);
    rep.results = json{{"s_whole", e.s_whole},
                       {"s_part", e.s_part},
                       {"singular_values", g.singular_values()},
                       {"s_marginal_a_from_partial_trace", s_a},
                       {"s_marginal_b_from_partial_trace", s_b}};
    if (std::abs(s_a - e.s_part) > 1e-9 || std::abs(s_b - e.s_part) > 1e-9) {
        rep.violations.push_back("marginal entropy routes disagree: " + format_double(e.s_part) + " vs " +
                                 format_double(s_a) + " / " + format_double(s_b));
    }
    timer.mark("entropy");
    rep.summary.push_back("S(whole) = " + short_double(e.s_whole) + ", S(part) = " + short_double(e.s_part));
    return rep;
}

RunReport cmd_demo(std::uint64_t seed, const Tolerances &tol) {
    RunReport rep = named_report("demo");
    PhaseTimer timer(rep.timings);
    rep.config_echo = config_base(tol);
    rep.config_echo["seed"] = seed;
    json items = json::array();

    auto record = [&](const std::string &name, json expected, json observed, bool pass) {
        items.push_back(json{{"name", name}, {"expected", expected}, {"observed", observed}, {"pass", pass}});
        rep.summary.push_back(std::string(pass ? "[PASS] " : "[FAIL] ") + name);
        if (!pass) {
            rep.violations.push_back("demo item failed: " + name);
        }
    };
    auto verdict_str = [&](const State &rho, const Property &p) {
        return std::string(to_string(has_property(rho, p, tol).verdict));
    };

    const double r2 = 1.0 / std::sqrt(2.0);
    const ComplexMatrix up = ComplexMatrix::column({1.0, 0.0});
    const ComplexMatrix down = ComplexMatrix::column({0.0, 1.0});
    const ComplexMatrix right = ComplexMatrix::column({r2, r2});
    {
        const Property p_up = Property::from_matrix(outer(up, up), tol);
        const Property p_down = Property::from_matrix(outer(down, down), tol);
        const json observed = {verdict_str(State::pure(up), p_up), verdict_str(State::pure(up), p_down),
                               verdict_str(State::pure(right), p_up)};
        const json expected = {"Has", "HasNot", "Meaningless"};
        record("spin up / down / right", expected, observed, observed == expected);
    }
    {
        const std::vector<ComplexMatrix> span{ComplexMatrix::column({1.0, 0.0, 1.0, 0.0}),
                                              ComplexMatrix::column({1.0, 0.0, -1.0, 0.0})};
        const Property even = property_from_span(span, 4, tol).property;
        const State mixed = State::from_matrix(ComplexMatrix::diagonal({0.25, 0.0, 0.75, 0.0}), tol);
        const State coherent = State::pure(ComplexMatrix::column({1.0, 0.0, 1.0, 0.0}));
        const json observed = {verdict_str(mixed, even), verdict_str(coherent, even)};
        const json expected = {"Has", "Has"};
        record("even property in dimension 4", expected, observed, observed == expected);
    }
    {
        const Property sym = symmetric_projector(2);
        const State upup = State::pure(ComplexMatrix::column({1.0, 0.0, 0.0, 0.0}));
        const State singlet = State::pure(ComplexMatrix::column({0.0, r2, -r2, 0.0}));
        const json observed = {verdict_str(upup, sym), verdict_str(singlet, sym)};
        const json expected = {"Has", "HasNot"};
        record("symmetric property of two qubits", expected, observed, observed == expected);
    }
    timer.mark("examples");
    {
        double worst = 0.0;
        for (std::size_t i = 0; i < 10; ++i) {
            Rng rng = stream_for(seed, i);
            const std::size_t d = 2 + i % 4;
            const std::size_t rank = 1 + static_cast<std::size_t>(rng() % (d - 1));
            const Property p = Property::from_matrix(random_projector_matrix(d, rank, rng), tol);
            const Property back = extract_property(from_property(p), tol);
            worst = std::max(worst, max_abs_diff(back.matrix(), p.matrix()));
        }
        record("projector -> repeatable map -> projector roundtrip (10 random)", json{{"max_deviation_at_most", 1e-10}},
               json{{"max_deviation", worst}}, worst <= 1e-10);
    }
    timer.mark("roundtrip");
    rep.results["items"] = std::move(items);
    return rep;
}

}  // namespace mereo
