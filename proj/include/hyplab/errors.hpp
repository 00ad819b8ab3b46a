#pragma once
#include <stdexcept>
#include <string>

namespace hyplab {

// Bad run configuration or violated operation precondition.
// The CLI maps this to exit code 2.
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation that started out valid failed to converge or lost
// validity along the way (step-size collapse, bracketing failure,
// quadrature disagreement). The CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hyplab
