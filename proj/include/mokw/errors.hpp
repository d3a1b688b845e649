#pragma once

#include <stdexcept>
#include <string>

namespace mokw {

/// Raised when a model is constructed with parameters outside its domain.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an argument lies outside the mathematical domain of an
/// operation (probabilities outside (0,1), indices out of range, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative procedure (quadrature, optimizer, root finder) failed to meet
/// its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An integral that defines the requested quantity does not exist.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The request is well-formed but the construction it asks for degenerates
/// for these parameters (e.g. a geometric count with success probability 1).
class DegenerateCase : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace mokw
