#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmlr {

// Operand shapes are incompatible. Both offending extents are kept so the
// caller can tell which side of an operator was wrong.
class DimensionError : public std::invalid_argument {
public:
    DimensionError(const std::string& what, std::size_t first, std::size_t second)
        : std::invalid_argument(what + " (" + std::to_string(first) + " vs " +
                                std::to_string(second) + ")"),
          first_(first),
          second_(second) {}

    std::size_t first() const noexcept { return first_; }
    std::size_t second() const noexcept { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

class NonFiniteError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed files, bad breakpoints, invalid configuration values.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Base for failures of the numerics themselves (the CLI maps these to exit 2).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrixError : public NumericalError {
public:
    // axis < 0 means the failure is not tied to one grid axis.
    explicit SingularMatrixError(const std::string& what, int axis = -1)
        : NumericalError(what), axis_(axis) {}

    int axis() const noexcept { return axis_; }

private:
    int axis_;
};

class NodeBudgetError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class RankDeficiencyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class KinematicSingularityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace pmlr
