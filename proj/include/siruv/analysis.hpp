#ifndef SIRUV_ANALYSIS_HPP
#define SIRUV_ANALYSIS_HPP

#include <vector>

#include "siruv/model.hpp"
#include "siruv/ode.hpp"
#include "siruv/trajectory.hpp"

namespace siruv {

/**
 * The decoupling experiment: integrates `kind` (Legacy or Effective) with the
 * residence matrix forced to identity, integrates the single-patch reference
 * separately per patch from the same per-patch initial state and parameters,
 * and returns for each patch the sup norm over sampled times and compartments
 * of the difference. Both runs share cfg so discretisation error cancels to
 * first order.
 *
 * A model with the decoupling property yields pure solver noise here; one
 * without it yields order-of-magnitude larger deviations.
 */
std::vector<double> decoupling_error(ModelKind kind, const std::vector<PatchParams>& params,
                                     const SystemState& state0, const ode::SolverConfig& cfg);

struct EquilibriumResult {
    SystemState state;
    double residual = 0.0;  ///< ||rhs(state)||_inf at the returned state
    double t = 0.0;         ///< model time at which the residual bound was met
};

/**
 * Integrates from seed_state until ||rhs||_inf < residual_tol (checked at
 * t = 0 and after every accepted step). Throws NotConverged with the final
 * residual when t_end is reached first.
 */
EquilibriumResult find_equilibrium(const Model& model, const SystemState& seed_state,
                                   const ode::SolverConfig& cfg, double residual_tol = 1e-10);

} // namespace siruv

#endif
