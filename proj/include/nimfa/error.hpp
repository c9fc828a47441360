#pragma once

#include <stdexcept>
#include <string>

#include "nimfa/types.hpp"

namespace nimfa {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: wrong dimensions, non-finite entries, negative rates.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation (e.g. a state
/// component outside [0,1], a steady state component equal to 1).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside the regime it is defined for.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An iterative method stopped at max_iter. Carries the last iterate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, Vector last_iterate, double residual)
        : Error(what), last_iterate_(std::move(last_iterate)), residual_(residual) {}

    const Vector& last_iterate() const noexcept { return last_iterate_; }
    double residual() const noexcept { return residual_; }

private:
    Vector last_iterate_;
    double residual_;
};

/// The stability certificate could not be issued (rho(F) >= 1).
class CertificateFailure : public Error {
public:
    using Error::Error;
};

/// Random instance generation exhausted its retry budget.
class GenerationError : public Error {
public:
    using Error::Error;
};

}  // namespace nimfa
