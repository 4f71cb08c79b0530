#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gar {

/// Bad argument shape: empty inputs, mismatched grids or dimensions, out-of-range parameters.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A point that violates its space's representation invariants.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Cholesky factorization failed (matrix not positive definite at the pivot threshold).
class DecompositionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input is well-formed but statistically degenerate (zero variance, constant series).
class DegenerateInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace gar
