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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mereo/report.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

struct GammaFlags {
    std::string gamma_file;
    std::string preset;
    std::optional<std::uint64_t> random_seed;
    std::vector<std::size_t> dims{2, 2};
};

void add_gamma_flags(CLI::App *cmd, GammaFlags &f) {
    auto *file = cmd->add_option("--gamma", f.gamma_file, "Gamma as JSON {rows, cols, re, im}");
    auto *preset = cmd->add_option("--preset", f.preset, "built-in Gamma: bell2, product2, maxent3");
    auto *random = cmd->add_option("--random-seed", f.random_seed, "draw a Ginibre Gamma from this seed");
    file->excludes(preset)->excludes(random);
    preset->excludes(random);
    cmd->add_option("--dims", f.dims, "dims A B for --random-seed")->expected(2);
}

mereo::GammaSource gamma_source(const GammaFlags &f) {
    mereo::GammaSource src;
    if (!f.gamma_file.empty()) {
        src.kind = mereo::GammaSource::Kind::File;
        src.path = f.gamma_file;
    } else if (f.random_seed) {
        src.kind = mereo::GammaSource::Kind::Random;
        src.seed = *f.random_seed;
        src.dims = {f.dims.at(0), f.dims.at(1)};
    } else {
        src.kind = mereo::GammaSource::Kind::Preset;
        if (!f.preset.empty()) {
            src.preset = f.preset;
        }
    }
    return src;
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw mereo::InputError("cannot write '" + path + "'");
    }
    out << text;
}

int emit(const mereo::RunReport &rep, const std::string &out_path) {
    const std::string doc = rep.to_json().dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << doc;
        for (const auto &line : rep.summary) {
            std::cerr << line << '\n';
        }
    } else {
        write_text(out_path, doc);
        for (const auto &line : rep.summary) {
            std::cout << line << '\n';
        }
    }
    for (const auto &v : rep.violations) {
        std::cerr << "invariant violation: " << v << '\n';
    }
    return rep.violations.empty() ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"mereo: properties of the whole and of the parts for bipartite pure states"};
    app.set_version_flag("--version", std::string(mereo::kVersion));
    app.require_subcommand(1);

    std::string out_path;
    std::optional<double> tol_rank;
    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");
        cmd->add_option("--tol-rank", tol_rank, "override the rank tolerance")->check(CLI::PositiveNumber);
    };

    GammaFlags gf;
    std::string convention = "bothreport";
    std::uint64_t seed = 0;
    mereo::SearchOptions search_opts;
    std::size_t samples = 1000;
    std::size_t k = 4;
    std::string csv_path;

    auto *certify = app.add_subcommand("certify", "certify holism of |Gamma>><<Gamma|");
    add_common(certify);
    add_gamma_flags(certify, gf);
    certify->add_option("--convention", convention, "atleastone, both or bothreport")
        ->check(CLI::IsMember({"atleastone", "both", "bothreport"}));

    auto *search = app.add_subcommand("search", "numerically minimize the commutator over product properties");
    add_common(search);
    add_gamma_flags(search, gf);
    search->add_option("--seed", search_opts.config.rng_seed, "restart seed");
    search->add_option("--restarts", search_opts.config.restarts)->check(CLI::PositiveNumber);
    search->add_option("--max-iters", search_opts.config.max_iters)->check(CLI::PositiveNumber);
    search->add_option("--rank-p", search_opts.config.rank_p);
    search->add_option("--rank-q", search_opts.config.rank_q);
    search->add_flag("--exclude-exclusive", search_opts.config.exclude_exclusive,
                     "penalize pairs with ||P Gamma Q^T|| below the exclusion floor");
    search->add_flag("--oracle", search_opts.oracle, "compare against the (2,2) Bloch grid");
    search->add_option("--resolution", search_opts.oracle_resolution, "grid points per angle")
        ->check(CLI::Range(2, 512));

    std::vector<std::size_t> density_dims{2, 2};
    auto *density = app.add_subcommand("density", "holistic fraction over Ginibre-sampled Gammas");
    add_common(density);
    density->add_option("--dims", density_dims)->expected(2);
    density->add_option("--samples", samples);
    density->add_option("--seed", seed);
    density->add_option("--csv", csv_path, "per-sample CSV output");

    auto *lattice = app.add_subcommand("lattice", "build a lattice of compatible holistic properties");
    add_common(lattice);
    add_gamma_flags(lattice, gf);
    lattice->add_option("--k", k, "number of members");
    lattice->add_option("--seed", seed, "seed for the completion draws");

    auto *entropy = app.add_subcommand("entropy", "entropy of the whole and of a part");
    add_common(entropy);
    add_gamma_flags(entropy, gf);

    auto *demo = app.add_subcommand("demo", "worked property examples and the transformation roundtrip");
    add_common(demo);
    demo->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        mereo::Tolerances tol = mereo::tolerances_from_environment();
        if (tol_rank) {
            tol.rank = *tol_rank;
        }
        if (*certify) {
            return emit(mereo::cmd_certify(gamma_source(gf), mereo::parse_convention(convention), tol), out_path);
        }
        if (*search) {
            return emit(mereo::cmd_search(gamma_source(gf), search_opts, tol), out_path);
        }
        if (*density) {
            const mereo::DensityRun run =
                mereo::cmd_density({density_dims.at(0), density_dims.at(1)}, samples, seed, tol);
            if (!csv_path.empty()) {
                write_text(csv_path, run.csv);
            }
            return emit(run.report, out_path);
        }
        if (*lattice) {
            return emit(mereo::cmd_lattice(gamma_source(gf), k, seed, tol), out_path);
        }
        if (*entropy) {
            return emit(mereo::cmd_entropy(gamma_source(gf), tol), out_path);
        }
        if (*demo) {
            return emit(mereo::cmd_demo(seed, tol), out_path);
        }
    } catch (const mereo::InvariantViolation &e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::invalid_argument &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
