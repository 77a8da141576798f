#ifndef SIRUV_TEST_UTIL_HPP
#define SIRUV_TEST_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "siruv/patch_params.hpp"
#include "siruv/residence_matrix.hpp"
#include "siruv/state.hpp"

namespace testutil {

inline siruv::PatchParams reference_params() {
    return siruv::PatchParams{
        .mu = 10.0 / (1000.0 * 365.0),
        .gamma = 0.01,
        .nu = 1.0 / 14.0,
        .theta = 0.4,
        .alpha = 0.008,
        .beta = 0.01,
        .host_pop = 20000.0,
        .vector_pop = 100000.0,
    };
}

inline siruv::PatchParams random_params(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return siruv::PatchParams{
        .mu = 1e-5 + 1e-3 * u(rng),
        .gamma = 0.005 + 0.3 * u(rng),
        .nu = 0.02 + 0.4 * u(rng),
        .theta = 0.8 * u(rng),
        .alpha = 0.05 * u(rng),
        .beta = 0.3 * u(rng),
        .host_pop = 1e3 + 1e5 * u(rng),
        .vector_pop = 1e3 + 5e5 * u(rng),
    };
}

/// Uniform draw from both unit simplices.
inline siruv::PatchState random_state(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    const double v = u(rng);
    return siruv::PatchState{a, b - a, 1.0 - b, 1.0 - v, v};
}

inline siruv::SystemState random_system_state(std::mt19937& rng, std::size_t n) {
    siruv::SystemState s(n);
    for (std::size_t k = 0; k < n; ++k) s.set_patch(k, random_state(rng));
    return s;
}

inline std::vector<std::vector<double>> random_stochastic_rows(std::mt19937& rng,
                                                               std::size_t n) {
    std::uniform_real_distribution<double> u(0.01, 1.0);
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (auto& row : rows) {
        double sum = 0.0;
        for (double& e : row) {
            e = u(rng);
            sum += e;
        }
        for (double& e : row) e /= sum;
    }
    return rows;
}

/// sup|a-b| / sup(|a|,|b|), the vector-level relative deviation.
inline double rel_sup_diff(std::span<const double> a, std::span<const double> b) {
    double scale = 0.0, diff = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        scale = std::max({scale, std::abs(a[k]), std::abs(b[k])});
        diff = std::max(diff, std::abs(a[k] - b[k]));
    }
    return scale > 0.0 ? diff / scale : diff;
}

inline double sup_diff(std::span<const double> a, std::span<const double> b) {
    double diff = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) diff = std::max(diff, std::abs(a[k] - b[k]));
    return diff;
}

} // namespace testutil

#endif
