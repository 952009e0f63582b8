#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zeta_heat {

// Every failure raised by the library derives from Error. The CLI maps each
// category onto exactly one exit status (see cli.hpp).

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent input data (zero files, configuration).
class ValidationError : public Error {
public:
    ValidationError(const std::string& what, std::size_t line = 0)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

    /// 1-based line number of the offending input, or 0 if not line-specific.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A numerical procedure could not meet its requested tolerance.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double best_estimate, double residual)
        : Error(what), best_estimate_(best_estimate), residual_(residual) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double residual() const noexcept { return residual_; }

private:
    double best_estimate_;
    double residual_;
};

/// Request exceeds the range covered by the available zero data.
class CoverageError : public Error {
public:
    using Error::Error;
};

/// Network or provider failure while fetching remote data.
class TransportError : public Error {
public:
    using Error::Error;
};

/// Cached data failed its checksum.
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// Provider cannot supply the requested number of ordinates.
class BoundedResultError : public Error {
public:
    BoundedResultError(const std::string& what, std::size_t max_available)
        : Error(what), max_available_(max_available) {}

    std::size_t max_available() const noexcept { return max_available_; }

private:
    std::size_t max_available_;
};

}  // namespace zeta_heat
