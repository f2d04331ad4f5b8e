#pragma once

#include <stdexcept>
#include <string>

namespace vortex {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NormalizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IdentityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoEigenvalueError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedModeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AssemblyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Budget exhausted; `estimate` and `error` hold the best result reached.
struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& what, double estimate, double error)
        : std::runtime_error(what), estimate(estimate), error(error) {}
    double estimate;
    double error;
};

struct EvaluationError : std::runtime_error {
    EvaluationError(const std::string& what, double location)
        : std::runtime_error(what), location(location) {}
    double location;
};

}  // namespace vortex
