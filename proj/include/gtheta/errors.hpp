#pragma once

#include <stdexcept>
#include <string>

namespace gtheta {

/// Bad catalog name or invalid construction parameters.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// No omega in [0, target] reaches the target value; carries the best attempt.
/// Throwing this from solve_action is itself a B3 refutation witness.
struct UnsolvableError : std::runtime_error {
    double target;
    double x;
    double best_value;
    UnsolvableError(const std::string& what, double target_, double x_, double best)
        : std::runtime_error(what), target(target_), x(x_), best_value(best) {}
};

/// Operation needs an enumerable carrier but got a continuous one (or vice versa).
struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

/// Constructive search ran out of candidates; reported, never swallowed.
struct SearchExhaustedError : std::runtime_error {
    explicit SearchExhaustedError(const std::string& what) : std::runtime_error(what) {}
};

/// A user-supplied function produced a non-finite value.
struct EvaluationError : std::runtime_error {
    explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gtheta
