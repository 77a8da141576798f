#ifndef SIRUV_STATE_HPP
#define SIRUV_STATE_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "siruv/errors.hpp"

namespace siruv {

/// Compartment offsets inside one patch block of a flat state vector.
namespace compartment {
inline constexpr std::size_t S = 0;
inline constexpr std::size_t I = 1;
inline constexpr std::size_t R = 2;
inline constexpr std::size_t U = 3;
inline constexpr std::size_t V = 4;
inline constexpr std::size_t count = 5;
inline constexpr const char* names[] = {"S", "I", "R", "U", "V"};
} // namespace compartment

/// One patch's compartment fractions. Hosts live on {s+i+r=1}, vectors on {u+v=1}.
struct PatchState {
    double s = 1.0;
    double i = 0.0;
    double r = 0.0;
    double u = 1.0;
    double v = 0.0;

    /// Checks fractions lie in [0, 1+tol] and both simplex sums hold within tol.
    void validate(double tol = 1e-9) const;

    bool operator==(const PatchState&) const = default;
};

/**
 * Flat state of an n-patch system. Canonical layout is patch-major with
 * compartments ordered S, I, R, U, V; all file output and solver vectors
 * use exactly this ordering.
 */
class SystemState {
public:
    SystemState() = default;
    explicit SystemState(std::size_t n_patches)
        : x_(compartment::count * n_patches, 0.0) {}
    SystemState(std::initializer_list<PatchState> patches);

    /// Wraps a flat vector; size must be a multiple of 5.
    static SystemState from_flat(std::vector<double> flat);

    std::size_t patches() const { return x_.size() / compartment::count; }
    std::size_t size() const { return x_.size(); }
    bool empty() const { return x_.empty(); }

    PatchState patch(std::size_t k) const;
    void set_patch(std::size_t k, const PatchState& p);

    double operator[](std::size_t idx) const { return x_[idx]; }
    double& operator[](std::size_t idx) { return x_[idx]; }

    std::span<const double> flat() const { return x_; }
    std::span<double> flat() { return x_; }

    /// Validates every patch (see PatchState::validate).
    void validate(double tol = 1e-9) const;

    bool operator==(const SystemState&) const = default;

private:
    std::vector<double> x_;
};

} // namespace siruv

#endif
