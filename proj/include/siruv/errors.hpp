#ifndef SIRUV_ERRORS_HPP
#define SIRUV_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace siruv {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad inputs: parameters, matrices, states, configs. CLI maps these to exit code 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Failures arising during numerical integration. CLI maps these to exit code 2.
class NumericalError : public Error {
public:
    using Error::Error;
};

class NonSquareMatrix : public ValidationError {
public:
    explicit NonSquareMatrix(const std::string& detail)
        : ValidationError("residence matrix is not square: " + detail) {}
};

class EntryOutOfRange : public ValidationError {
public:
    EntryOutOfRange(std::size_t i, std::size_t j, double value)
        : ValidationError("residence matrix entry (" + std::to_string(i) + "," +
                          std::to_string(j) + ") = " + std::to_string(value) +
                          " outside [0,1]"),
          row(i), col(j), entry(value) {}
    std::size_t row, col;
    double entry;
};

class RowSumViolation : public ValidationError {
public:
    RowSumViolation(std::size_t i, double row_sum)
        : ValidationError("residence matrix row " + std::to_string(i) +
                          " sums to " + std::to_string(row_sum) + ", expected 1"),
          row(i), sum(row_sum) {}
    std::size_t row;
    double sum;
};

class ZeroEffectivePopulation : public ValidationError {
public:
    explicit ZeroEffectivePopulation(std::size_t j)
        : ValidationError("effective population of patch " + std::to_string(j) +
                          " is zero (no residence time budgeted to it)"),
          patch(j) {}
    std::size_t patch;
};

class DimensionMismatch : public ValidationError {
public:
    explicit DimensionMismatch(const std::string& detail)
        : ValidationError("dimension mismatch: " + detail) {}
};

class InvalidParams : public ValidationError {
public:
    explicit InvalidParams(const std::string& detail)
        : ValidationError("invalid patch parameters: " + detail) {}
};

class InvalidState : public ValidationError {
public:
    explicit InvalidState(const std::string& detail)
        : ValidationError("invalid compartment state: " + detail) {}
};

class InvalidSolverConfig : public ValidationError {
public:
    explicit InvalidSolverConfig(const std::string& detail)
        : ValidationError("invalid solver config: " + detail) {}
};

class ParseError : public ValidationError {
public:
    explicit ParseError(const std::string& detail)
        : ValidationError("parse error: " + detail) {}
};

class StepLimitExceeded : public NumericalError {
public:
    StepLimitExceeded(double t, std::uint64_t steps)
        : NumericalError("step limit of " + std::to_string(steps) +
                         " reached at t = " + std::to_string(t)),
          time(t), max_steps(steps) {}
    double time;
    std::uint64_t max_steps;
};

class NonFiniteState : public NumericalError {
public:
    explicit NonFiniteState(double t)
        : NumericalError("state became non-finite at t = " + std::to_string(t)), time(t) {}
    double time;
};

class ToleranceUnreachable : public NumericalError {
public:
    ToleranceUnreachable(double t, double dt)
        : NumericalError("adaptive step underflow (dt = " + std::to_string(dt) +
                         ") at t = " + std::to_string(t)),
          time(t), step(dt) {}
    double time;
    double step;
};

class NotConverged : public NumericalError {
public:
    NotConverged(double t_end, double res)
        : NumericalError("no equilibrium by t = " + std::to_string(t_end) +
                         ", residual " + std::to_string(res)),
          time(t_end), residual(res) {}
    double time;
    double residual;
};

/// Raised when an integrated state drifts off the unit simplices by more than
/// the diagnostic bound (1e-6). States are never clamped.
class SimplexViolation : public NumericalError {
public:
    SimplexViolation(double t, std::size_t patch_idx, const std::string& detail)
        : NumericalError("simplex violation at t = " + std::to_string(t) + ", patch " +
                         std::to_string(patch_idx) + ": " + detail),
          time(t), patch(patch_idx) {}
    double time;
    std::size_t patch;
};

} // namespace siruv

#endif
