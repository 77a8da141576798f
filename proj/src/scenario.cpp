#include "siruv/scenario.hpp"

#include <json.hpp>

#include <set>
#include <string>

namespace siruv {

using ordered_json = nlohmann::ordered_json;

namespace {

PatchParams reference_params() {
    // Rate set shared by every preset; gamma is a project default (see README).
    return PatchParams{
        .mu = 10.0 / (1000.0 * 365.0),
        .gamma = 0.01,
        .nu = 1.0 / 14.0,
        .theta = 0.4,
        .alpha = 0.008,
        .beta = 0.01,
        .host_pop = 20000.0,
        .vector_pop = 100000.0,
    };
}

std::vector<std::vector<double>> reference_matrix() {
    return {{0.2, 0.7, 0.1}, {0.5, 0.1, 0.4}, {0.3, 0.6, 0.1}};
}

PatchState seeded_patch() { return PatchState{0.99, 0.01, 0.0, 1.0, 0.0}; }

std::vector<PatchState> default_initial(std::size_t n) {
    // one seeded patch, everything else disease-free
    std::vector<PatchState> init(n);
    if (!init.empty()) init[0] = seeded_patch();
    return init;
}

} // namespace

ScenarioConfig::ScenarioConfig()
    : patches(3, reference_params()), P(reference_matrix()), initial(default_initial(3)) {}

void ScenarioConfig::validate() const {
    if (schema_version != 1)
        throw ValidationError("unsupported schema_version " + std::to_string(schema_version));
    if (n == 0) throw ValidationError("n must be >= 1");
    if (patches.size() != n)
        throw DimensionMismatch(std::to_string(patches.size()) + " patch parameter sets for n = " +
                                std::to_string(n));
    for (const PatchParams& p : patches) p.validate();
    if (P.size() != n)
        throw DimensionMismatch("P has " + std::to_string(P.size()) + " rows for n = " +
                                std::to_string(n));
    (void)validate_residence_matrix(P, row_sum_tol);
    if (initial.size() != n)
        throw DimensionMismatch(std::to_string(initial.size()) + " initial states for n = " +
                                std::to_string(n));
    for (const PatchState& s : initial) s.validate(1e-9);
    if (!(row_sum_tol > 0.0)) throw ValidationError("row_sum_tol must be > 0");
    solver.validate();
    if (model == ModelKind::SinglePatchReference && n != 1)
        throw DimensionMismatch("single-patch reference model requires n = 1");
}

ResidenceMatrix ScenarioConfig::residence() const {
    return validate_residence_matrix(P, row_sum_tol);
}

Model ScenarioConfig::make_model() const { return make_model(model); }

Model ScenarioConfig::make_model(ModelKind kind) const {
    return Model(kind, patches, residence());
}

SystemState ScenarioConfig::initial_state() const {
    SystemState state(n);
    for (std::size_t k = 0; k < n; ++k) state.set_patch(k, initial[k]);
    return state;
}

namespace presets {

ScenarioConfig paper_3patch() { return ScenarioConfig{}; }

ScenarioConfig single_patch() {
    ScenarioConfig cfg;
    cfg.name = "single-patch";
    cfg.model = ModelKind::SinglePatchReference;
    cfg.n = 1;
    cfg.patches = {reference_params()};
    cfg.P = {{1.0}};
    cfg.initial = {seeded_patch()};
    return cfg;
}

std::vector<std::string> names() { return {"paper-3patch", "single-patch"}; }

ScenarioConfig by_name(const std::string& name) {
    if (name == "paper-3patch") return paper_3patch();
    if (name == "single-patch") return single_patch();
    throw ValidationError("unknown preset '" + name + "'");
}

} // namespace presets

namespace {

void reject_unknown_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.contains(key))
            throw ValidationError("unknown key '" + key + "' in " + where);
}

double number_at(const ordered_json& obj, const std::string& key, double fallback,
                 const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        throw ValidationError(where + "." + key + " must be a number");
    return obj[key].get<double>();
}

PatchParams parse_patch(const ordered_json& obj, const std::string& where) {
    reject_unknown_keys(obj, {"mu", "gamma", "nu", "theta", "alpha", "beta", "N", "M"}, where);
    const PatchParams d = reference_params();
    return PatchParams{
        .mu = number_at(obj, "mu", d.mu, where),
        .gamma = number_at(obj, "gamma", d.gamma, where),
        .nu = number_at(obj, "nu", d.nu, where),
        .theta = number_at(obj, "theta", d.theta, where),
        .alpha = number_at(obj, "alpha", d.alpha, where),
        .beta = number_at(obj, "beta", d.beta, where),
        .host_pop = number_at(obj, "N", d.host_pop, where),
        .vector_pop = number_at(obj, "M", d.vector_pop, where),
    };
}

PatchState parse_initial(const ordered_json& obj, const std::string& where) {
    reject_unknown_keys(obj, {"S", "I", "R", "U", "V"}, where);
    // unspecified compartments default to the disease-free values
    return PatchState{
        number_at(obj, "S", 1.0, where), number_at(obj, "I", 0.0, where),
        number_at(obj, "R", 0.0, where), number_at(obj, "U", 1.0, where),
        number_at(obj, "V", 0.0, where),
    };
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        ScenarioConfig cfg;  // blank document: full paper-3patch defaults
        cfg.validate();
        return cfg;
    }
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw ParseError("config document must be a JSON object");
    reject_unknown_keys(doc,
                        {"schema_version", "name", "model", "n", "patches", "P", "initial",
                         "solver", "row_sum_tol"},
                        "config");

    ScenarioConfig cfg;  // paper-3patch defaults

    if (doc.contains("schema_version")) {
        if (!doc["schema_version"].is_number_integer())
            throw ValidationError("schema_version must be an integer");
        cfg.schema_version = doc["schema_version"].get<int>();
        if (cfg.schema_version != 1)
            throw ValidationError("unsupported schema_version " +
                                  std::to_string(cfg.schema_version));
    }
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw ValidationError("name must be a string");
        cfg.name = doc["name"].get<std::string>();
    }
    if (doc.contains("model")) {
        if (!doc["model"].is_string()) throw ValidationError("model must be a string");
        cfg.model = model_kind_from_string(doc["model"].get<std::string>());
    }
    if (doc.contains("n")) {
        if (!doc["n"].is_number_unsigned() || doc["n"].get<std::uint64_t>() == 0)
            throw ValidationError("n must be a positive integer");
        cfg.n = doc["n"].get<std::size_t>();
    }

    if (doc.contains("patches")) {
        if (!doc["patches"].is_array()) throw ValidationError("patches must be an array");
        const auto& arr = doc["patches"];
        cfg.patches.clear();
        if (arr.size() == 1) {  // one entry broadcasts to every patch
            cfg.patches.assign(cfg.n, parse_patch(arr[0], "patches[0]"));
        } else {
            for (std::size_t k = 0; k < arr.size(); ++k)
                cfg.patches.push_back(parse_patch(arr[k], "patches[" + std::to_string(k) + "]"));
        }
    } else {
        cfg.patches.assign(cfg.n, reference_params());
    }

    if (doc.contains("P")) {
        if (!doc["P"].is_array()) throw ValidationError("P must be an array of rows");
        cfg.P.clear();
        for (const auto& row : doc["P"]) {
            if (!row.is_array()) throw ValidationError("P rows must be arrays");
            std::vector<double> r;
            for (const auto& e : row) {
                if (!e.is_number()) throw ValidationError("P entries must be numbers");
                r.push_back(e.get<double>());
            }
            cfg.P.push_back(std::move(r));
        }
    } else if (cfg.n != 3) {
        // the bundled default matrix is 3x3; other sizes default to no commuting
        cfg.P.assign(cfg.n, std::vector<double>(cfg.n, 0.0));
        for (std::size_t i = 0; i < cfg.n; ++i) cfg.P[i][i] = 1.0;
    }

    if (doc.contains("initial")) {
        if (!doc["initial"].is_array()) throw ValidationError("initial must be an array");
        cfg.initial.clear();
        std::size_t k = 0;
        for (const auto& entry : doc["initial"])
            cfg.initial.push_back(parse_initial(entry, "initial[" + std::to_string(k++) + "]"));
    } else {
        cfg.initial = default_initial(cfg.n);
    }

    if (doc.contains("solver")) {
        const auto& s = doc["solver"];
        if (!s.is_object()) throw ValidationError("solver must be an object");
        reject_unknown_keys(
            s, {"method", "dt", "t_end", "rel_tol", "abs_tol", "sample_every", "max_steps"},
            "solver");
        if (s.contains("method")) {
            if (!s["method"].is_string()) throw ValidationError("solver.method must be a string");
            cfg.solver.method = ode::method_from_string(s["method"].get<std::string>());
        }
        cfg.solver.dt = number_at(s, "dt", cfg.solver.dt, "solver");
        cfg.solver.t_end = number_at(s, "t_end", cfg.solver.t_end, "solver");
        cfg.solver.rel_tol = number_at(s, "rel_tol", cfg.solver.rel_tol, "solver");
        cfg.solver.abs_tol = number_at(s, "abs_tol", cfg.solver.abs_tol, "solver");
        cfg.solver.sample_every = number_at(s, "sample_every", cfg.solver.sample_every, "solver");
        if (s.contains("max_steps")) {
            if (!s["max_steps"].is_number_unsigned())
                throw ValidationError("solver.max_steps must be a non-negative integer");
            cfg.solver.max_steps = s["max_steps"].get<std::uint64_t>();
        }
    }

    cfg.row_sum_tol = number_at(doc, "row_sum_tol", cfg.row_sum_tol, "config");

    cfg.validate();
    return cfg;
}

std::string write_config(const ScenarioConfig& cfg) {
    ordered_json doc;
    doc["schema_version"] = cfg.schema_version;
    doc["name"] = cfg.name;
    doc["model"] = to_string(cfg.model);
    doc["n"] = cfg.n;
    doc["patches"] = ordered_json::array();
    for (const PatchParams& p : cfg.patches)
        doc["patches"].push_back(ordered_json{{"mu", p.mu},
                                              {"gamma", p.gamma},
                                              {"nu", p.nu},
                                              {"theta", p.theta},
                                              {"alpha", p.alpha},
                                              {"beta", p.beta},
                                              {"N", p.host_pop},
                                              {"M", p.vector_pop}});
    doc["P"] = cfg.P;
    doc["initial"] = ordered_json::array();
    for (const PatchState& s : cfg.initial)
        doc["initial"].push_back(
            ordered_json{{"S", s.s}, {"I", s.i}, {"R", s.r}, {"U", s.u}, {"V", s.v}});
    doc["solver"] = ordered_json{{"method", ode::to_string(cfg.solver.method)},
                                 {"dt", cfg.solver.dt},
                                 {"t_end", cfg.solver.t_end},
                                 {"rel_tol", cfg.solver.rel_tol},
                                 {"abs_tol", cfg.solver.abs_tol},
                                 {"sample_every", cfg.solver.sample_every},
                                 {"max_steps", cfg.solver.max_steps}};
    doc["row_sum_tol"] = cfg.row_sum_tol;
    return doc.dump(2) + "\n";
}

} // namespace siruv
