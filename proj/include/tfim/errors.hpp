#pragma once

#include <stdexcept>
#include <string>

namespace tfim {

/// Argument outside an operation's domain (bad site list, empty cut, angle count mismatch).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Ring too large for the dense code paths.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Matrix that fails the density-operator checks (trace, hermiticity, positivity).
class InvalidStateError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical routine (eigensolver, quadrature) did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved " + std::to_string(achieved) + ")"), achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

} // namespace tfim
