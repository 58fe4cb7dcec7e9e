#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace gsscm {

/// Errors caused by the input data or by violated preconditions.
/// The CLI maps these to exit code 2. The `kind` token is stable and
/// machine-parseable, e.g. "sample-too-small: need n >= p+1 ...".
class DataError : public std::runtime_error {
public:
    DataError(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Errors raised by numerical procedures (non-convergence, series
/// truncation budget exceeded, singular densities). CLI exit code 3.
class NumericError : public std::runtime_error {
public:
    NumericError(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Iteration limit reached; carries the last iterate so callers can inspect it.
class ConvergenceError : public NumericError {
public:
    ConvergenceError(const std::string& message, Eigen::VectorXd last_iterate, int iterations)
        : NumericError("no-convergence", message),
          last_iterate_(std::move(last_iterate)),
          iterations_(iterations) {}

    const Eigen::VectorXd& last_iterate() const noexcept { return last_iterate_; }
    int iterations() const noexcept { return iterations_; }

private:
    Eigen::VectorXd last_iterate_;
    int iterations_;
};

}  // namespace gsscm
