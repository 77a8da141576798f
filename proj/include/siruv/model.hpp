#ifndef SIRUV_MODEL_HPP
#define SIRUV_MODEL_HPP

#include <span>
#include <string>
#include <vector>

#include "siruv/patch_params.hpp"
#include "siruv/residence_matrix.hpp"
#include "siruv/state.hpp"

namespace siruv {

enum class ModelKind {
    Legacy,               ///< couples patches through residence-weighted contact sums
    Effective,            ///< transmission scaled by the population present in each patch
    SinglePatchReference  ///< n = 1 reduction of the effective model
};

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/**
 * A fully wired multi-patch SIRUV system: kind, per-patch parameters and the
 * residence matrix. Construction validates dimensions (SinglePatchReference
 * requires n = 1) and, for the effective model, that every patch has a
 * positive effective population.
 *
 * rhs() is pure: identical inputs produce bit-identical derivatives. Both
 * systems are autonomous; t is accepted for interface uniformity and ignored.
 */
class Model {
public:
    Model(ModelKind kind, std::vector<PatchParams> params, ResidenceMatrix P);

    ModelKind kind() const { return kind_; }
    std::size_t patches() const { return params_.size(); }
    const std::vector<PatchParams>& params() const { return params_; }
    const ResidenceMatrix& residence() const { return P_; }

    /// Writes the derivative of y into dydt. Both spans have length 5n.
    void rhs(double t, std::span<const double> y, std::span<double> dydt) const;

    /// Convenience wrapper returning the derivative as a SystemState.
    SystemState derivative(const SystemState& state, double t = 0.0) const;

private:
    void rhs_legacy_kernel(std::span<const double> y, std::span<double> dydt) const;
    void rhs_effective_kernel(std::span<const double> y, std::span<double> dydt) const;
    void rhs_single_kernel(std::span<const double> y, std::span<double> dydt) const;

    ModelKind kind_;
    std::vector<PatchParams> params_;
    ResidenceMatrix P_;
    // state-independent tables, fixed at construction
    std::vector<double> col_weight_;  // w(k,j) = P(k,j) * N_k   (effective model)
    std::vector<double> eff_pop_;     // E_j = sum_k w(k,j)
};

/// Derivative of the legacy multi-patch system at `state`.
SystemState rhs_legacy(const SystemState& state, const std::vector<PatchParams>& params,
                       const ResidenceMatrix& P, double t = 0.0);

/// Derivative of the effective-population multi-patch system at `state`.
SystemState rhs_effective(const SystemState& state, const std::vector<PatchParams>& params,
                          const ResidenceMatrix& P, double t = 0.0);

/// Derivative of the single-patch reference system at `state`.
PatchState rhs_single_patch(const PatchState& state, const PatchParams& params, double t = 0.0);

} // namespace siruv

#endif
