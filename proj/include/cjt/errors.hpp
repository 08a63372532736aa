// errors.hpp -- exception types shared across the library
//
// Validation problems throw std::invalid_argument, physics-domain violations
// (normal phase, unstable boson sector, ...) throw std::domain_error.

#pragma once

#include <stdexcept>
#include <string>

namespace cjt {

// Iterative solver ran out of iterations; carries the last residual seen.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

// Requested problem size exceeds the configured dense-solver budget.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cjt
