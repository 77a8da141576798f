#include "siruv/trajectory.hpp"

#include <cmath>
#include <string>

namespace siruv {

void Trajectory::validate() const {
    if (times.empty() || times.size() != states.size())
        throw DimensionMismatch("trajectory has " + std::to_string(times.size()) +
                                " times and " + std::to_string(states.size()) + " states");
    if (times.front() != 0.0)
        throw InvalidState("trajectory must start at t = 0");
    const std::size_t n = states.front().patches();
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (k > 0 && !(times[k] > times[k - 1]))
            throw InvalidState("trajectory times must be strictly increasing");
        if (states[k].patches() != n)
            throw DimensionMismatch("trajectory patch count changes at sample " +
                                    std::to_string(k));
    }
}

namespace {

// Drift diagnostic on sampled states. Integration never clamps; anything
// beyond 1e-6 off the simplices means the run is numerically broken.
constexpr double drift_tol = 1e-6;

void check_drift(const SystemState& state, double t) {
    for (std::size_t k = 0; k < state.patches(); ++k) {
        const PatchState p = state.patch(k);
        for (double f : {p.s, p.i, p.r, p.u, p.v})
            if (!(f >= -drift_tol && f <= 1.0 + drift_tol))
                throw SimplexViolation(t, k, "fraction " + std::to_string(f));
        if (std::abs(p.s + p.i + p.r - 1.0) > drift_tol)
            throw SimplexViolation(t, k, "S+I+R = " + std::to_string(p.s + p.i + p.r));
        if (std::abs(p.u + p.v - 1.0) > drift_tol)
            throw SimplexViolation(t, k, "U+V = " + std::to_string(p.u + p.v));
    }
}

} // namespace

Trajectory simulate(const Model& model, const SystemState& state0,
                    const ode::SolverConfig& cfg, std::string provenance) {
    if (state0.patches() != model.patches())
        throw DimensionMismatch("initial state has " + std::to_string(state0.patches()) +
                                " patches, model has " + std::to_string(model.patches()));
    state0.validate(1e-9);

    ode::Solution sol = ode::integrate(
        [&model](double t, std::span<const double> y, std::span<double> dydt) {
            model.rhs(t, y, dydt);
        },
        state0.flat(), cfg);

    Trajectory traj;
    traj.model = model.kind();
    traj.provenance = std::move(provenance);
    traj.times = std::move(sol.times);
    traj.states.reserve(sol.states.size());
    for (std::size_t k = 0; k < sol.states.size(); ++k) {
        traj.states.push_back(SystemState::from_flat(std::move(sol.states[k])));
        check_drift(traj.states.back(), traj.times[k]);
    }
    return traj;
}

ConservationReport check_conservation(const Trajectory& traj, double tol) {
    traj.validate();
    ConservationReport report;
    report.tol = tol;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        for (std::size_t p = 0; p < traj.states[k].patches(); ++p) {
            const PatchState st = traj.states[k].patch(p);
            const double host = std::abs(st.s + st.i + st.r - 1.0);
            const double vec = std::abs(st.u + st.v - 1.0);
            report.max_host_residual = std::max(report.max_host_residual, host);
            report.max_vector_residual = std::max(report.max_vector_residual, vec);
            if ((host > tol || vec > tol) && !report.breach) {
                report.breach = true;
                report.first_breach_time = traj.times[k];
                report.first_breach_patch = p;
            }
        }
    }
    return report;
}

} // namespace siruv
