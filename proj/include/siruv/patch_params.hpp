#ifndef SIRUV_PATCH_PARAMS_HPP
#define SIRUV_PATCH_PARAMS_HPP

#include <cmath>
#include <string>

#include "siruv/errors.hpp"

namespace siruv {

/**
 * Per-patch epidemiological rates (all per day) and population sizes.
 *
 * alpha and beta are the infectious-contact rates of an infected mosquito
 * resp. an infective person with the people present in a patch; the legacy
 * model reuses them as its vector-to-host and host-to-host coefficients.
 */
struct PatchParams {
    double mu;          ///< host birth/death rate
    double gamma;       ///< host recovery rate
    double nu;          ///< vector birth/death rate
    double theta;       ///< vector infection contact rate
    double alpha;       ///< per-infected-mosquito infectious contact rate
    double beta;        ///< per-infective-human infectious contact rate
    double host_pop;    ///< host population size N
    double vector_pop;  ///< vector population size M

    void validate() const {
        auto rate_ok = [](double r) { return std::isfinite(r) && r >= 0.0; };
        if (!rate_ok(mu) || !rate_ok(gamma) || !rate_ok(nu) || !rate_ok(theta) ||
            !rate_ok(alpha) || !rate_ok(beta))
            throw InvalidParams("rates must be finite and >= 0");
        if (!(std::isfinite(host_pop) && host_pop > 0.0))
            throw InvalidParams("host_pop must be > 0, got " + std::to_string(host_pop));
        if (!(std::isfinite(vector_pop) && vector_pop > 0.0))
            throw InvalidParams("vector_pop must be > 0, got " + std::to_string(vector_pop));
    }

    bool operator==(const PatchParams&) const = default;
};

} // namespace siruv

#endif
