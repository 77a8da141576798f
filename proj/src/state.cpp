#include "siruv/state.hpp"

#include <cmath>
#include <string>

namespace siruv {

namespace {

void check_fraction(double f, const char* name, double tol) {
    if (!(std::isfinite(f) && f >= 0.0 && f <= 1.0 + tol))
        throw InvalidState(std::string(name) + " = " + std::to_string(f) +
                           " outside [0, 1+tol]");
}

} // namespace

void PatchState::validate(double tol) const {
    check_fraction(s, "S", tol);
    check_fraction(i, "I", tol);
    check_fraction(r, "R", tol);
    check_fraction(u, "U", tol);
    check_fraction(v, "V", tol);
    if (std::abs(s + i + r - 1.0) > tol)
        throw InvalidState("S+I+R = " + std::to_string(s + i + r) + " is off the host simplex");
    if (std::abs(u + v - 1.0) > tol)
        throw InvalidState("U+V = " + std::to_string(u + v) + " is off the vector simplex");
}

SystemState::SystemState(std::initializer_list<PatchState> patches)
    : x_(compartment::count * patches.size()) {
    std::size_t k = 0;
    for (const PatchState& p : patches) set_patch(k++, p);
}

SystemState SystemState::from_flat(std::vector<double> flat) {
    if (flat.size() % compartment::count != 0)
        throw DimensionMismatch("flat state length " + std::to_string(flat.size()) +
                                " is not a multiple of 5");
    SystemState s;
    s.x_ = std::move(flat);
    return s;
}

PatchState SystemState::patch(std::size_t k) const {
    if (k >= patches()) throw DimensionMismatch("patch index " + std::to_string(k));
    const double* b = x_.data() + compartment::count * k;
    return {b[compartment::S], b[compartment::I], b[compartment::R], b[compartment::U],
            b[compartment::V]};
}

void SystemState::set_patch(std::size_t k, const PatchState& p) {
    if (k >= patches()) throw DimensionMismatch("patch index " + std::to_string(k));
    double* b = x_.data() + compartment::count * k;
    b[compartment::S] = p.s;
    b[compartment::I] = p.i;
    b[compartment::R] = p.r;
    b[compartment::U] = p.u;
    b[compartment::V] = p.v;
}

void SystemState::validate(double tol) const {
    for (std::size_t k = 0; k < patches(); ++k) patch(k).validate(tol);
}

} // namespace siruv
