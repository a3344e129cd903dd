#pragma once

#include <stdexcept>
#include <string>

namespace fragsim {

// Invalid input (bad parameter, malformed config, violated precondition).
struct ValidationError : std::invalid_argument {
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Iterative numerics failed to meet its contract.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what, double best = 0.0)
        : std::runtime_error(what), best_residual(best) {}
    double best_residual;
};

} // namespace fragsim
