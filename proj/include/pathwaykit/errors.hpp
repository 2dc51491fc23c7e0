#pragma once

#include <stdexcept>
#include <string>

namespace pathwaykit {

// Argument outside the mathematical domain of an operation, or a parameter
// record that violates its invariants.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An iterative or series computation stopped before reaching its target.
// Carries the best value reached and a bound on its error.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double partial, double bound)
        : std::runtime_error(what), partial_(partial), bound_(bound) {}

    double partial() const noexcept { return partial_; }
    double bound() const noexcept { return bound_; }

private:
    double partial_;
    double bound_;
};

// Two independent evaluation routes disagree beyond tolerance.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Singular input: empty design rows, constant samples, and the like.
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed tabular or JSON input. Row and column are 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t row = 0, std::size_t column = 0)
        : std::runtime_error(what), row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

}  // namespace pathwaykit
