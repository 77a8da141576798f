#ifndef SIRUV_TRAJECTORY_HPP
#define SIRUV_TRAJECTORY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "siruv/model.hpp"
#include "siruv/ode.hpp"
#include "siruv/state.hpp"

namespace siruv {

/// Time-stamped sequence of system states produced by one integration run.
struct Trajectory {
    ModelKind model = ModelKind::Effective;
    std::string provenance;  ///< scenario identifier
    std::vector<double> times;
    std::vector<SystemState> states;

    std::size_t patches() const { return states.empty() ? 0 : states.front().patches(); }

    /// Invariants: equal lengths, nonempty, times strictly increasing from 0,
    /// uniform patch count.
    void validate() const;
};

/**
 * Integrates `model` from state0 and returns the sampled trajectory.
 * state0 must sit on both simplices within 1e-9. Sampled states are checked
 * against the 1e-6 drift diagnostic (SimplexViolation); they are never
 * clamped.
 */
Trajectory simulate(const Model& model, const SystemState& state0,
                    const ode::SolverConfig& cfg, std::string provenance = {});

struct ConservationReport {
    double max_host_residual = 0.0;    ///< max |S+I+R-1| over samples and patches
    double max_vector_residual = 0.0;  ///< max |U+V-1|
    double tol = 0.0;
    bool breach = false;
    std::optional<double> first_breach_time;
    std::optional<std::size_t> first_breach_patch;
};

/// Scans a trajectory for simplex drift; flags a breach when either residual
/// exceeds tol at any sample.
ConservationReport check_conservation(const Trajectory& traj, double tol);

} // namespace siruv

#endif
