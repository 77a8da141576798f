#include "siruv/analysis.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace siruv {

std::vector<double> decoupling_error(ModelKind kind, const std::vector<PatchParams>& params,
                                     const SystemState& state0, const ode::SolverConfig& cfg) {
    if (kind != ModelKind::Legacy && kind != ModelKind::Effective)
        throw ValidationError("decoupling experiment needs a multi-patch model kind");
    const std::size_t n = params.size();
    if (state0.patches() != n)
        throw DimensionMismatch("initial state has " + std::to_string(state0.patches()) +
                                " patches for " + std::to_string(n) + " parameter sets");

    const Model multi(kind, params, ResidenceMatrix::identity(n));
    const Trajectory coupled = simulate(multi, state0, cfg, "decoupled-" + to_string(kind));

    std::vector<double> deviations(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const Model single(ModelKind::SinglePatchReference, {params[i]},
                           ResidenceMatrix::identity(1));
        const Trajectory ref =
            simulate(single, SystemState{state0.patch(i)}, cfg, "single-patch reference");
        if (ref.times.size() != coupled.times.size())
            throw NumericalError("reference and multi-patch sample grids differ");
        for (std::size_t k = 0; k < ref.times.size(); ++k) {
            const std::size_t base = compartment::count * i;
            for (std::size_t c = 0; c < compartment::count; ++c)
                deviations[i] = std::max(
                    deviations[i], std::abs(coupled.states[k][base + c] - ref.states[k][c]));
        }
    }
    return deviations;
}

EquilibriumResult find_equilibrium(const Model& model, const SystemState& seed_state,
                                   const ode::SolverConfig& cfg, double residual_tol) {
    if (seed_state.patches() != model.patches())
        throw DimensionMismatch("seed state has " + std::to_string(seed_state.patches()) +
                                " patches, model has " + std::to_string(model.patches()));

    std::vector<double> scratch(seed_state.size());
    double residual = std::numeric_limits<double>::infinity();
    const auto stalled = [&](double t, std::span<const double> y) {
        model.rhs(t, y, scratch);
        residual = 0.0;
        for (double d : scratch) residual = std::max(residual, std::abs(d));
        return residual < residual_tol;
    };

    const ode::ProbeResult probe = ode::integrate_until(
        [&model](double t, std::span<const double> y, std::span<double> dydt) {
            model.rhs(t, y, dydt);
        },
        seed_state.flat(), cfg, stalled);

    if (!probe.stopped) throw NotConverged(cfg.t_end, residual);
    return {SystemState::from_flat(probe.state), residual, probe.t};
}

} // namespace siruv
