#pragma once

#include <stdexcept>
#include <string>

namespace outflow {

// Configuration / run-spec problems. CLI maps these to exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures: non-convergence, positivity loss, singular solves.
// CLI maps these to exit code 3.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what, double residual = 0.0)
        : std::runtime_error(what), last_residual(residual) {}
    double last_residual;
};

} // namespace outflow
