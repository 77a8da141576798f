#include "siruv/model.hpp"

#include <string>
#include <vector>

namespace siruv {

using namespace compartment;

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Legacy: return "legacy";
        case ModelKind::Effective: return "effective";
        case ModelKind::SinglePatchReference: return "single";
    }
    throw ValidationError("unhandled model kind");
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "legacy") return ModelKind::Legacy;
    if (name == "effective") return ModelKind::Effective;
    if (name == "single") return ModelKind::SinglePatchReference;
    throw ValidationError("unknown model '" + name + "' (expected legacy|effective|single)");
}

Model::Model(ModelKind kind, std::vector<PatchParams> params, ResidenceMatrix P)
    : kind_(kind), params_(std::move(params)), P_(std::move(P)) {
    if (params_.empty()) throw InvalidParams("at least one patch is required");
    for (const PatchParams& p : params_) p.validate();
    const std::size_t n = params_.size();
    if (P_.size() != n)
        throw DimensionMismatch("residence matrix is " + std::to_string(P_.size()) + "x" +
                                std::to_string(P_.size()) + " for " + std::to_string(n) +
                                " patches");
    if (kind_ == ModelKind::SinglePatchReference && n != 1)
        throw DimensionMismatch("single-patch reference model requires n = 1, got n = " +
                                std::to_string(n));

    if (kind_ == ModelKind::Effective || kind_ == ModelKind::SinglePatchReference) {
        std::vector<double> pops(n);
        for (std::size_t k = 0; k < n; ++k) pops[k] = params_[k].host_pop;
        eff_pop_ = effective_populations(P_, pops);  // throws ZeroEffectivePopulation
        col_weight_.resize(n * n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) col_weight_[k * n + j] = P_(k, j) * pops[k];
    }
}

void Model::rhs(double t, std::span<const double> y, std::span<double> dydt) const {
    (void)t;  // both systems are autonomous
    const std::size_t dim = count * patches();
    if (y.size() != dim || dydt.size() != dim)
        throw DimensionMismatch("state length " + std::to_string(y.size()) + ", expected " +
                                std::to_string(dim));
    switch (kind_) {
        case ModelKind::Legacy: rhs_legacy_kernel(y, dydt); break;
        case ModelKind::Effective: rhs_effective_kernel(y, dydt); break;
        case ModelKind::SinglePatchReference: rhs_single_kernel(y, dydt); break;
    }
}

// Each kernel computes every loss/gain term exactly once and reuses it, so the
// per-patch identities dS+dI+dR = mu*(1-S-I-R) and dU+dV = nu*(1-U-V) hold at
// floating-point granularity, not just in exact arithmetic.

void Model::rhs_legacy_kernel(std::span<const double> y, std::span<double> dydt) const {
    const std::size_t n = patches();
    for (std::size_t i = 0; i < n; ++i) {
        const PatchParams& pi = params_[i];
        const double* x = y.data() + count * i;
        double* d = dydt.data() + count * i;

        // force of infection on residents of patch i: vector bites weighted by
        // where they spend time, plus person-to-person contact along both
        // directions of travel (the diagonal counted once)
        double vector_force = 0.0;
        double contact_sum = 0.0;
        double mosquito_exposure = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            vector_force += params_[j].alpha * P_(i, j) * y[count * j + V];
            contact_sum += (P_(i, j) + P_(j, i)) * y[count * j + I];
            mosquito_exposure += y[count * j + I] * P_(j, i);
        }
        const double foi = vector_force + pi.beta * (contact_sum - P_(i, i) * x[I]);

        const double incidence = x[S] * foi;
        const double recovery = pi.gamma * x[I];
        const double exposure = pi.theta * x[U] * mosquito_exposure;
        d[S] = pi.mu * (1.0 - x[S]) - incidence;
        d[I] = incidence - pi.mu * x[I] - recovery;
        d[R] = recovery - pi.mu * x[R];
        d[U] = pi.nu * (1.0 - x[U]) - exposure;
        d[V] = exposure - pi.nu * x[V];
    }
}

void Model::rhs_effective_kernel(std::span<const double> y, std::span<double> dydt) const {
    const std::size_t n = patches();

    // infective people present in patch j: sum_k P(k,j) * N_k * I_k
    static thread_local std::vector<double> present_inf;
    present_inf.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            present_inf[j] += col_weight_[k * n + j] * y[count * k + I];

    for (std::size_t i = 0; i < n; ++i) {
        const PatchParams& pi = params_[i];
        const double* x = y.data() + count * i;
        double* d = dydt.data() + count * i;

        // every contact in patch j is diluted by the population present there
        double infection = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const PatchParams& pj = params_[j];
            const double w = P_(i, j) * x[S] / eff_pop_[j];
            infection += pj.alpha * pj.vector_pop * y[count * j + V] * w +
                         pj.beta * present_inf[j] * w;
        }

        const double recovery = pi.gamma * x[I];
        const double exposure = pi.theta * ((x[U] / pi.vector_pop) * present_inf[i]);
        d[S] = pi.mu * (1.0 - x[S]) - infection;
        d[I] = infection - pi.mu * x[I] - recovery;
        d[R] = recovery - pi.mu * x[R];
        d[U] = pi.nu * (1.0 - x[U]) - exposure;
        d[V] = exposure - pi.nu * x[V];
    }
}

// Mirrors rhs_effective_kernel collapsed to n = 1, P = [1], term for term, so
// the reduction equivalence holds to the last bit.
void Model::rhs_single_kernel(std::span<const double> y, std::span<double> dydt) const {
    const PatchParams& p = params_[0];
    const double present_inf = p.host_pop * y[I];
    const double w = y[S] / p.host_pop;
    const double infection =
        p.alpha * p.vector_pop * y[V] * w + p.beta * present_inf * w;

    const double recovery = p.gamma * y[I];
    const double exposure = p.theta * ((y[U] / p.vector_pop) * present_inf);
    dydt[S] = p.mu * (1.0 - y[S]) - infection;
    dydt[I] = infection - p.mu * y[I] - recovery;
    dydt[R] = recovery - p.mu * y[R];
    dydt[U] = p.nu * (1.0 - y[U]) - exposure;
    dydt[V] = exposure - p.nu * y[V];
}

SystemState Model::derivative(const SystemState& state, double t) const {
    SystemState out(patches());
    rhs(t, state.flat(), out.flat());
    return out;
}

SystemState rhs_legacy(const SystemState& state, const std::vector<PatchParams>& params,
                       const ResidenceMatrix& P, double t) {
    return Model(ModelKind::Legacy, params, P).derivative(state, t);
}

SystemState rhs_effective(const SystemState& state, const std::vector<PatchParams>& params,
                          const ResidenceMatrix& P, double t) {
    return Model(ModelKind::Effective, params, P).derivative(state, t);
}

PatchState rhs_single_patch(const PatchState& state, const PatchParams& params, double t) {
    const Model m(ModelKind::SinglePatchReference, {params}, ResidenceMatrix::identity(1));
    return m.derivative(SystemState{state}, t).patch(0);
}

} // namespace siruv
