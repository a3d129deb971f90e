#pragma once

#include <stdexcept>
#include <string>

namespace monotone {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Violated precondition: dimension mismatch, bad parameter, empty input.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// An iterative routine failed to converge. Carries the best bound reached,
/// so callers can decide whether the partial answer is still usable.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double best_bound)
        : Error(what), best_bound_(best_bound) {}

    double best_bound() const noexcept { return best_bound_; }

private:
    double best_bound_;
};

/// A hard resource budget was exceeded (grid size, constraint count).
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Something that should be impossible happened; signals a bug, not bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace monotone
