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

#ifndef MEREO_REPORT_HPP
#define MEREO_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mereo/commutant_search.hpp"
#include "mereo/doubleket.hpp"
#include "mereo/holism.hpp"

namespace mereo {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Malformed user input (unparseable matrix file, unknown preset, ...).
class InputError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// {"rows", "cols", "re": [...], "im": [...]}, row-major.
nlohmann::json matrix_to_json(const ComplexMatrix &m);
/// Inverse of matrix_to_json; "im" may be omitted for real matrices.
ComplexMatrix matrix_from_json(const nlohmann::json &j);

nlohmann::json tolerances_to_json(const Tolerances &tol);
/// Overrides fields of `base` from a JSON object with keys herm, recon,
/// rank, compat, support. Unknown keys are an InputError.
Tolerances apply_tolerance_override(const Tolerances &base, const nlohmann::json &override_obj);
/// Applies MEREO_TOL_OVERRIDE when set.
Tolerances tolerances_from_environment(const Tolerances &base = default_tolerances());

/// Built-in Gammas: bell2 (I_2/sqrt 2), product2 (|0><0|), maxent3 (I_3/sqrt 3).
ComplexMatrix preset_matrix(std::string_view name);

struct GammaSource {
    enum class Kind { File, Preset, Random };
    Kind kind = Kind::Preset;
    std::string path;
    std::string preset = "bell2";
    std::uint64_t seed = 0;
    SystemDims dims{2, 2};
};

/// Loads, parses and normalizes the Gamma; throws InputError on failure.
GammaOperator resolve_gamma(const GammaSource &src);
nlohmann::json gamma_source_to_json(const GammaSource &src);

enum class ConventionChoice { AtLeastOne, Both, BothReport };

ConventionChoice parse_convention(std::string_view s);
std::string_view to_string(ConventionChoice c);

nlohmann::json verdict_to_json(const HolismVerdict &v);
nlohmann::json search_result_to_json(const SearchResult &r);

struct RunReport {
    std::string command;
    nlohmann::json config_echo;
    nlohmann::json results;
    nlohmann::json timings;
    /// Human-readable lines for the terminal.
    std::vector<std::string> summary;
    /// Invariant failures detected during the run (non-empty means exit 3).
    std::vector<std::string> violations;

    nlohmann::json to_json() const;
};

RunReport cmd_certify(const GammaSource &src, ConventionChoice convention, const Tolerances &tol);

struct SearchOptions {
    SearchConfig config;
    bool oracle = false;
    std::size_t oracle_resolution = 48;
};

RunReport cmd_search(const GammaSource &src, const SearchOptions &opts, const Tolerances &tol);

struct DensityRun {
    RunReport report;
    std::string csv;
};

DensityRun cmd_density(SystemDims dims, std::size_t samples, std::uint64_t seed, const Tolerances &tol);

/// RFC-4180 CSV: sample_index,smallest_singular_value,holistic_atleastone,holistic_both.
std::string density_csv(const DensityReport &r);

RunReport cmd_lattice(const GammaSource &src, std::size_t k, std::uint64_t seed, const Tolerances &tol);

RunReport cmd_entropy(const GammaSource &src, const Tolerances &tol);

/// Worked property examples plus the projector/transformation roundtrip on
/// random projectors drawn from `seed`.
RunReport cmd_demo(std::uint64_t seed, const Tolerances &tol);

}  // namespace mereo

#endif  // MEREO_REPORT_HPP
