#include "siruv/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "siruv/analysis.hpp"
#include "siruv/csv.hpp"
#include "siruv/scenario.hpp"
#include "siruv/trajectory.hpp"

namespace siruv::cli {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

// deviation bounds of the decoupling report; the legacy bound was calibrated
// from a fine-step oracle run of this experiment, not from published values
constexpr double pass_deviation = 1e-6;
constexpr double legacy_fail_deviation = 1e-3;
constexpr double min_failure_ratio = 100.0;

constexpr double conservation_tol = 1e-7;

ScenarioConfig load_scenario(const std::string& config_path, const std::string& preset_name) {
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ValidationError("cannot read config file '" + config_path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        return parse_config(text.str());
    }
    if (!preset_name.empty()) return presets::by_name(preset_name);
    return presets::paper_3patch();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path.string() + "'");
    out << text;
    if (!out) throw Error("write to '" + path.string() + "' failed");
}

void run_simulate(const ScenarioConfig& cfg, const std::string& model_flag,
                  const fs::path& out_dir) {
    cfg.validate();
    const ModelKind kind = model_flag.empty() ? cfg.model : model_kind_from_string(model_flag);
    const Model model = cfg.make_model(kind);

    const Trajectory traj = simulate(model, cfg.initial_state(), cfg.solver, cfg.name);
    const ConservationReport report = check_conservation(traj, conservation_tol);

    fs::create_directories(out_dir);
    const fs::path traj_path = out_dir / ("trajectory_" + to_string(kind) + ".csv");
    write_trajectory(traj, traj_path);

    ordered_json j;
    j["schema_version"] = 1;
    j["scenario"] = cfg.name;
    j["model"] = to_string(kind);
    j["samples"] = traj.times.size();
    j["t_end"] = cfg.solver.t_end;
    j["tolerance"] = report.tol;
    j["max_host_residual"] = report.max_host_residual;
    j["max_vector_residual"] = report.max_vector_residual;
    j["breach"] = report.breach;
    if (report.breach) {
        j["first_breach_time"] = *report.first_breach_time;
        j["first_breach_patch"] = *report.first_breach_patch;
    }
    const fs::path rep_path = out_dir / ("conservation_" + to_string(kind) + ".json");
    write_text(rep_path, j.dump(2) + "\n");

    std::cout << "wrote " << traj_path.string() << " (" << traj.times.size() << " samples, "
              << traj.patches() << " patches)\n"
              << "wrote " << rep_path.string() << " (max residuals: host "
              << report.max_host_residual << ", vector " << report.max_vector_residual << ")\n";
    if (report.breach)
        throw NumericalError("conservation breach at t = " +
                             std::to_string(*report.first_breach_time));
}

void run_compare_decoupled(const ScenarioConfig& cfg, const fs::path& out_dir) {
    cfg.validate();
    const SystemState state0 = cfg.initial_state();

    ordered_json models = ordered_json::object();
    double max_dev[2] = {0.0, 0.0};
    const ModelKind kinds[2] = {ModelKind::Effective, ModelKind::Legacy};
    for (int m = 0; m < 2; ++m) {
        const std::vector<double> devs =
            decoupling_error(kinds[m], cfg.patches, state0, cfg.solver);
        for (double d : devs) max_dev[m] = std::max(max_dev[m], d);
        models[to_string(kinds[m])] = ordered_json{
            {"per_patch_deviation", devs},
            {"max_deviation", max_dev[m]},
            {"pass", max_dev[m] < pass_deviation},
        };
    }
    const bool ratio_ok = max_dev[1] >= min_failure_ratio * max_dev[0];

    ordered_json j;
    j["schema_version"] = 1;
    j["scenario"] = cfg.name;
    j["solver"] = ordered_json{{"method", ode::to_string(cfg.solver.method)},
                               {"dt", cfg.solver.dt},
                               {"t_end", cfg.solver.t_end},
                               {"sample_every", cfg.solver.sample_every}};
    j["thresholds"] = ordered_json{{"pass_deviation", pass_deviation},
                                   {"legacy_fail_deviation", legacy_fail_deviation},
                                   {"min_failure_ratio", min_failure_ratio}};
    j["models"] = models;
    j["legacy_exceeds_fail_deviation"] = max_dev[1] > legacy_fail_deviation;
    j["legacy_to_effective_ratio_at_least_100"] = ratio_ok;
    j["note"] = "legacy_fail_deviation is calibrated from a fine-step oracle run of this "
                "experiment; the pass flag compares each model's decoupled run against the "
                "single-patch reference";

    fs::create_directories(out_dir);
    const fs::path rep_path = out_dir / "decoupling_report.json";
    write_text(rep_path, j.dump(2) + "\n");

    for (int m = 0; m < 2; ++m)
        std::cout << to_string(kinds[m]) << ": "
                  << (max_dev[m] < pass_deviation ? "PASS" : "FAIL") << " (max deviation "
                  << max_dev[m] << ")\n";
    std::cout << "wrote " << rep_path.string() << "\n";
}

void run_presets_list() {
    for (const std::string& name : presets::names()) {
        const ScenarioConfig cfg = presets::by_name(name);
        std::cout << name << "  (n=" << cfg.n << ", model=" << to_string(cfg.model) << ")\n";
    }
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"multi-patch SIRUV epidemic simulator"};
    app.require_subcommand(1);

    std::string config_path, preset_name, model_flag, out_dir = ".", show_name;

    CLI::App* sim = app.add_subcommand("simulate", "integrate one scenario and write its "
                                                   "trajectory CSV and conservation report");
    CLI::Option* sim_cfg = sim->add_option("--config", config_path, "JSON scenario config file");
    sim->add_option("--preset", preset_name, "built-in scenario name (see 'presets list')")
        ->excludes(sim_cfg);
    sim->add_option("--model", model_flag, "model override: legacy|effective|single");
    sim->add_option("--out", out_dir, "output directory (default .)");

    CLI::App* cmp = app.add_subcommand("compare-decoupled",
                                       "run both multi-patch models with commuting switched "
                                       "off and compare each patch against the single-patch "
                                       "reference");
    CLI::Option* cmp_cfg = cmp->add_option("--config", config_path, "JSON scenario config file");
    cmp->add_option("--preset", preset_name, "built-in scenario name")->excludes(cmp_cfg);
    cmp->add_option("--out", out_dir, "output directory (default .)");

    CLI::App* pre = app.add_subcommand("presets", "built-in scenarios");
    pre->require_subcommand(1);
    pre->add_subcommand("list", "list preset names");
    CLI::App* show = pre->add_subcommand("show", "print a preset as a config document");
    show->add_option("name", show_name, "preset name")->required();

    try {
        app.parse(argc, argv);

        if (sim->parsed()) {
            run_simulate(load_scenario(config_path, preset_name), model_flag, out_dir);
        } else if (cmp->parsed()) {
            run_compare_decoupled(load_scenario(config_path, preset_name), out_dir);
        } else if (pre->parsed()) {
            if (pre->get_subcommands().front()->get_name() == "list")
                run_presets_list();
            else
                std::cout << write_config(presets::by_name(show_name));
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace siruv::cli
