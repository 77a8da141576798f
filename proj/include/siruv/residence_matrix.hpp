#ifndef SIRUV_RESIDENCE_MATRIX_HPP
#define SIRUV_RESIDENCE_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "siruv/errors.hpp"

namespace siruv {

/**
 * Row-stochastic residence-time budgeting matrix. Entry (i,j) is the fraction
 * of unit time a resident of patch i spends in patch j, so every row must sum
 * to 1: a person's day is fully budgeted across patches.
 *
 * Immutable after construction; obtain instances through
 * validate_residence_matrix() or identity().
 */
class ResidenceMatrix {
public:
    static ResidenceMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return p_[i * n_ + j]; }

    /// Row-major entries, exactly as validated (never renormalised).
    std::span<const double> entries() const { return p_; }

    std::vector<std::vector<double>> rows() const;

    bool operator==(const ResidenceMatrix&) const = default;

private:
    ResidenceMatrix(std::size_t n, std::vector<double> p) : n_(n), p_(std::move(p)) {}
    friend ResidenceMatrix validate_residence_matrix(const std::vector<std::vector<double>>&,
                                                     double);

    std::size_t n_ = 0;
    std::vector<double> p_;
};

/**
 * Validates a raw square matrix as a residence-time matrix. Entries must lie
 * in [0,1] and each row must sum to 1 within tol. Entries are stored
 * untouched, so validating the rows of a validated matrix reproduces it.
 *
 * Throws NonSquareMatrix, EntryOutOfRange or RowSumViolation.
 */
ResidenceMatrix validate_residence_matrix(const std::vector<std::vector<double>>& raw,
                                          double tol = 1e-12);

/**
 * Effective population of patch j: sum_k p_kj * N_k, the number of people
 * physically present in patch j. Throws ZeroEffectivePopulation when column j
 * is all zero (nobody ever visits the patch) and InvalidParams when any
 * population is not positive.
 */
double effective_population(const ResidenceMatrix& P, std::span<const double> host_pops,
                            std::size_t j);

/// Effective populations of all patches at once.
std::vector<double> effective_populations(const ResidenceMatrix& P,
                                          std::span<const double> host_pops);

} // namespace siruv

#endif
