#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace skewgap {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file or record. The message carries `file:line` when known.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A mesh violates one of the closed-manifold invariants.
class MeshError : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the domain of the operation (t <= 0, k <= k0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative method did not reach its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> best_residuals = {})
        : Error(what), best_residuals_(std::move(best_residuals)) {}

    const std::vector<double>& best_residuals() const noexcept { return best_residuals_; }

private:
    std::vector<double> best_residuals_;
};

} // namespace skewgap
