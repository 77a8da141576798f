#ifndef SIRUV_SCENARIO_HPP
#define SIRUV_SCENARIO_HPP

#include <string>
#include <vector>

#include "siruv/model.hpp"
#include "siruv/ode.hpp"
#include "siruv/state.hpp"

namespace siruv {

/**
 * A complete, validated simulation scenario. Default-constructed it equals
 * the "paper-3patch" preset, so an empty config document means exactly that
 * scenario.
 */
struct ScenarioConfig {
    int schema_version = 1;
    std::string name = "paper-3patch";
    ModelKind model = ModelKind::Effective;
    std::size_t n = 3;
    std::vector<PatchParams> patches;   // length n
    std::vector<std::vector<double>> P; // raw row-major rows, validated on demand
    std::vector<PatchState> initial;    // length n
    ode::SolverConfig solver;
    double row_sum_tol = 1e-12;

    ScenarioConfig();

    /// Cross-validates all fields (params, matrix, initial simplices, solver).
    void validate() const;

    ResidenceMatrix residence() const;
    Model make_model() const;
    Model make_model(ModelKind kind) const;
    SystemState initial_state() const;

    bool operator==(const ScenarioConfig&) const = default;
};

namespace presets {

/// Three coupled patches with the bundled reference parameter set.
ScenarioConfig paper_3patch();

/// The same parameter set reduced to one isolated patch.
ScenarioConfig single_patch();

std::vector<std::string> names();
ScenarioConfig by_name(const std::string& name);  // throws ValidationError

} // namespace presets

/**
 * Parses a JSON config document. Missing keys fall back to the paper-3patch
 * preset values (an empty object yields the full preset); unknown keys are
 * rejected. Throws ParseError for malformed JSON and ValidationError (or a
 * core validation subclass such as RowSumViolation) for bad values.
 */
ScenarioConfig parse_config(const std::string& text);

/// Serialises a config so that parse_config(write_config(c)) == c exactly.
std::string write_config(const ScenarioConfig& cfg);

} // namespace siruv

#endif
