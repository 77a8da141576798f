// Acceptance suite. Runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion; exits non-zero if any fail.
// argv[1] must name the zikasim executable (used by criterion 8).

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "siruv/analysis.hpp"
#include "siruv/csv.hpp"
#include "siruv/scenario.hpp"
#include "siruv/trajectory.hpp"
#include "test_util.hpp"

using namespace siruv;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void criterion(int num, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", num, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

std::vector<PatchParams> reference_params3() {
    return std::vector<PatchParams>(3, testutil::reference_params());
}

SystemState seeded_state3() {
    return SystemState{PatchState{0.99, 0.01, 0.0, 1.0, 0.0}, PatchState{}, PatchState{}};
}

const std::vector<std::vector<double>> coupled_rows = {
    {0.2, 0.7, 0.1}, {0.5, 0.1, 0.4}, {0.3, 0.6, 0.1}};

// 1. Conservation: 100 random (params, P, state0) triples, both models,
//    RK4 dt=0.01 over 500 days; |S+I+R-1| and |U+V-1| stay below 1e-7.
void criterion1() {
    std::mt19937 rng(20240101);
    double worst_host = 0.0, worst_vector = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 1 + rep % 3;
        std::vector<PatchParams> params;
        for (std::size_t k = 0; k < n; ++k) params.push_back(testutil::random_params(rng));
        const ResidenceMatrix P =
            validate_residence_matrix(testutil::random_stochastic_rows(rng, n));
        const SystemState state0 = testutil::random_system_state(rng, n);

        ode::SolverConfig cfg;
        cfg.dt = 0.01;
        cfg.t_end = 500.0;
        cfg.sample_every = 1.0;

        for (ModelKind kind : {ModelKind::Legacy, ModelKind::Effective}) {
            const Trajectory traj = simulate(Model(kind, params, P), state0, cfg);
            const ConservationReport rep2 = check_conservation(traj, 1e-7);
            worst_host = std::max(worst_host, rep2.max_host_residual);
            worst_vector = std::max(worst_vector, rep2.max_vector_residual);
        }
    }
    criterion(1, "simplex conservation over 100 random scenarios",
              worst_host < 1e-7 && worst_vector < 1e-7,
              "max host residual " + fmt(worst_host) + ", max vector residual " +
                  fmt(worst_vector) + ", bound 1e-7");
}

// 2. Reduction equivalence: with P = identity the effective model equals the
//    single-patch reference, pointwise to 1e-14 relative and under 1e-6 in
//    sup norm over a full 2000-day trajectory.
double criterion2() {  // returns the effective model's trajectory deviation for #3
    std::mt19937 rng(20240202);
    const ResidenceMatrix I3 = ResidenceMatrix::identity(3);
    double worst_rel = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<PatchParams> params = {testutil::random_params(rng),
                                           testutil::random_params(rng),
                                           testutil::random_params(rng)};
        const SystemState state = testutil::random_system_state(rng, 3);
        const SystemState d = rhs_effective(state, params, I3);
        for (std::size_t i = 0; i < 3; ++i) {
            const PatchState ds = rhs_single_patch(state.patch(i), params[i]);
            const double patch_multi[5] = {d[5 * i], d[5 * i + 1], d[5 * i + 2], d[5 * i + 3],
                                           d[5 * i + 4]};
            const double patch_single[5] = {ds.s, ds.i, ds.r, ds.u, ds.v};
            worst_rel = std::max(worst_rel, testutil::rel_sup_diff(patch_multi, patch_single));
        }
    }

    ode::SolverConfig cfg;  // defaults: RK4, dt 0.01, 2000 days
    const std::vector<double> devs =
        decoupling_error(ModelKind::Effective, reference_params3(), seeded_state3(), cfg);
    double traj_dev = 0.0;
    for (double d : devs) traj_dev = std::max(traj_dev, d);

    criterion(2, "effective model reduces to the single-patch reference",
              worst_rel <= 1e-14 && traj_dev < 1e-6,
              "rhs relative gap " + fmt(worst_rel) + " (bound 1e-14), 2000-day deviation " +
                  fmt(traj_dev) + " (bound 1e-6)");
    return traj_dev;
}

// 3. Legacy failure witness: with the reference populations (M/N = 5) the
//    decoupled legacy model misses the single-patch reference by more than
//    1e-3 and by at least 100x the effective model's deviation.
void criterion3(double effective_dev) {
    ode::SolverConfig cfg;
    const std::vector<double> devs =
        decoupling_error(ModelKind::Legacy, reference_params3(), seeded_state3(), cfg);
    double legacy_dev = 0.0;
    for (double d : devs) legacy_dev = std::max(legacy_dev, d);

    criterion(3, "legacy model fails to decouple",
              legacy_dev > 1e-3 && legacy_dev >= 100.0 * effective_dev,
              "legacy deviation " + fmt(legacy_dev) + " (bound 1e-3), effective deviation " +
                  fmt(effective_dev) + ", ratio bound 100x");
}

// 4. Model agreement: with N = M and P = identity both multi-patch models
//    evaluate to the same derivative, 1e-14 relative, at 1000 random states.
void criterion4() {
    std::mt19937 rng(20240404);
    const ResidenceMatrix I3 = ResidenceMatrix::identity(3);
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<PatchParams> params;
        for (int k = 0; k < 3; ++k) {
            PatchParams p = testutil::random_params(rng);
            p.vector_pop = p.host_pop;
            params.push_back(p);
        }
        const SystemState state = testutil::random_system_state(rng, 3);
        const SystemState dl = rhs_legacy(state, params, I3);
        const SystemState de = rhs_effective(state, params, I3);
        worst = std::max(worst, testutil::rel_sup_diff(dl.flat(), de.flat()));
    }
    criterion(4, "models agree when N = M and commuting is off", worst <= 1e-14,
              "max relative gap " + fmt(worst) + ", bound 1e-14");
}

// 5. Disease-free stationarity: both right-hand sides are exactly zero.
void criterion5() {
    const auto params = reference_params3();
    const ResidenceMatrix P = validate_residence_matrix(coupled_rows);
    SystemState dfe(3);
    for (std::size_t k = 0; k < 3; ++k) dfe.set_patch(k, PatchState{});

    bool all_zero = true;
    for (const SystemState& d : {rhs_legacy(dfe, params, P), rhs_effective(dfe, params, P)})
        for (std::size_t k = 0; k < d.size(); ++k) all_zero = all_zero && d[k] == 0.0;
    criterion(5, "disease-free state is exactly stationary", all_zero,
              all_zero ? "every derivative component is 0.0" : "nonzero component found");
}

// 6. Solver order: halving the step from 0.2 to 0.1 shrinks the deviation
//    from a dt=0.001 reference by a factor in [12, 20].
void criterion6() {
    const Model single(ModelKind::SinglePatchReference, {testutil::reference_params()},
                       ResidenceMatrix::identity(1));
    const SystemState seed{PatchState{0.99, 0.01, 0.0, 1.0, 0.0}};

    auto run = [&](double dt) {
        ode::SolverConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 365.0;
        cfg.sample_every = 1.0;
        return simulate(single, seed, cfg);
    };
    const Trajectory ref = run(0.001);
    const Trajectory coarse = run(0.2);
    const Trajectory fine = run(0.1);

    auto dev = [&](const Trajectory& t) {
        double d = 0.0;
        for (std::size_t k = 0; k < t.times.size(); ++k)
            d = std::max(d, testutil::sup_diff(t.states[k].flat(), ref.states[k].flat()));
        return d;
    };
    const double e_coarse = dev(coarse), e_fine = dev(fine);
    const double ratio = e_coarse / e_fine;
    criterion(6, "RK4 self-convergence ratio is fourth order", ratio >= 12.0 && ratio <= 20.0,
              "e(0.2) = " + fmt(e_coarse) + ", e(0.1) = " + fmt(e_fine) + ", ratio " +
                  fmt(ratio) + ", bounds [12, 20]");
}

// 7. Effective-population arithmetic on the coupled matrix is exact.
void criterion7() {
    const ResidenceMatrix P = validate_residence_matrix(coupled_rows);
    const std::vector<double> N = {20000.0, 20000.0, 20000.0};
    const std::vector<double> eff = effective_populations(P, N);
    const bool ok = eff == std::vector<double>{20000.0, 28000.0, 12000.0};
    criterion(7, "effective populations of the coupled matrix are exact", ok,
              "got (" + fmt(eff[0]) + ", " + fmt(eff[1]) + ", " + fmt(eff[2]) +
                  "), expected (2e+04, 2.8e+04, 1.2e+04) exactly");
}

// 8. Interfaces: config and trajectory round-trip bit-exactly, and the CLI
//    decoupling experiment exits 0 flagging effective=pass, legacy=fail.
void criterion8(const std::string& zikasim) {
    const fs::path dir =
        fs::temp_directory_path() / ("siruv_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);

    bool config_ok = true;
    ScenarioConfig custom = presets::paper_3patch();
    custom.name = "acceptance";
    custom.patches[1].gamma = 1.0 / 7.0;
    custom.solver.dt = 0.0123456789012345678;
    custom.solver.method = ode::Method::RKF45Adaptive;
    for (const ScenarioConfig& cfg :
         {presets::paper_3patch(), presets::single_patch(), custom})
        config_ok = config_ok && parse_config(write_config(cfg)) == cfg;

    ode::SolverConfig short_cfg;
    short_cfg.t_end = 5.0;
    short_cfg.dt = 0.05;
    const ScenarioConfig preset = presets::paper_3patch();
    const Trajectory traj =
        simulate(preset.make_model(), preset.initial_state(), short_cfg, preset.name);
    write_trajectory(traj, dir / "traj.csv");
    const Trajectory back = read_trajectory(dir / "traj.csv", traj.model);
    const bool csv_ok = back.times == traj.times && back.states == traj.states;

    const std::string cmd = "'" + zikasim + "' compare-decoupled --out '" + dir.string() +
                            "' > '" + (dir / "cli.log").string() + "' 2>&1";
    const int raw = std::system(cmd.c_str());
    const int exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;

    bool report_ok = false;
    std::string report_detail = "report missing";
    std::ifstream rep(dir / "decoupling_report.json");
    if (rep) {
        const nlohmann::json j = nlohmann::json::parse(rep, nullptr, false);
        if (!j.is_discarded()) {
            const bool eff_pass = j["models"]["effective"]["pass"] == true;
            const bool leg_fail = j["models"]["legacy"]["pass"] == false;
            report_ok = eff_pass && leg_fail;
            report_detail = std::string("effective=") + (eff_pass ? "pass" : "FAIL") +
                            ", legacy=" + (leg_fail ? "fail" : "PASS");
        }
    }

    criterion(8, "round trips and CLI decoupling experiment",
              config_ok && csv_ok && exit_code == 0 && report_ok,
              std::string("config round-trip ") + (config_ok ? "exact" : "BROKEN") +
                  ", trajectory round-trip " + (csv_ok ? "exact" : "BROKEN") +
                  ", exit code " + std::to_string(exit_code) + ", " + report_detail);
    fs::remove_all(dir);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-zikasim>\n", argv[0]);
        return 2;
    }
    try {
        criterion1();
        const double effective_dev = criterion2();
        criterion3(effective_dev);
        criterion4();
        criterion5();
        criterion6();
        criterion7();
        criterion8(argv[1]);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance suite aborted: %s\n", e.what());
        return 2;
    }
    if (failures == 0) std::printf("all acceptance criteria passed\n");
    return failures == 0 ? 0 : 1;
}
