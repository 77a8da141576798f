#ifndef SIRUV_ODE_HPP
#define SIRUV_ODE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "siruv/errors.hpp"

namespace siruv::ode {

enum class Method {
    RK4Fixed,       ///< classical fixed-step RK4
    RKF45Adaptive,  ///< Fehlberg 4(5) embedded pair, PI-free step control
};

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct SolverConfig {
    Method method = Method::RK4Fixed;
    double dt = 0.01;              ///< fixed step, or initial step for RKF45 (days)
    double t_end = 2000.0;         ///< horizon (days)
    double rel_tol = 1e-8;         ///< adaptive relative tolerance
    double abs_tol = 1e-10;        ///< adaptive absolute tolerance
    double sample_every = 1.0;     ///< output decimation interval (days)
    std::uint64_t max_steps = 10'000'000;

    /// Throws InvalidSolverConfig unless dt, t_end, tolerances, sample_every
    /// are positive and max_steps covers t_end/dt.
    void validate() const;

    bool operator==(const SolverConfig&) const = default;
};

/// dt below which the adaptive controller gives up (ToleranceUnreachable).
inline constexpr double min_adaptive_step = 1e-10;

/// Derivative callback: fills dydt (same length as y) at time t.
using RhsFn = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Dimension-agnostic sampled solution.
struct Solution {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
};

/**
 * Integrates y' = rhs(t, y) from y0 over [0, t_end] and samples the solution
 * at every multiple of sample_every (t = 0 included).
 *
 * RK4Fixed takes ceil(t_end/dt) steps (the last one shortened to land on
 * t_end) and fills samples falling inside a step by linear interpolation.
 * RKF45Adaptive controls the local error against abs_tol + rel_tol*|y| and
 * clamps steps to land exactly on sample times, so adaptive samples are
 * accepted solution points.
 *
 * Deterministic: identical inputs give bit-identical solutions.
 *
 * Throws NonFiniteState, StepLimitExceeded, ToleranceUnreachable.
 */
Solution integrate(const RhsFn& rhs, std::span<const double> y0, const SolverConfig& cfg);

struct ProbeResult {
    std::vector<double> state;
    double t = 0.0;
    bool stopped = false;  ///< true when the predicate fired before t_end
};

/**
 * Integrates without sampling until stop(t, y) returns true (checked at t = 0
 * and after every accepted step) or t_end is reached.
 */
ProbeResult integrate_until(const RhsFn& rhs, std::span<const double> y0,
                            const SolverConfig& cfg,
                            const std::function<bool(double, std::span<const double>)>& stop);

} // namespace siruv::ode

#endif
