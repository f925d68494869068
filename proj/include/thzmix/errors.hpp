#pragma once

#include <stdexcept>
#include <string>

namespace thzmix {

struct InvalidParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised when the Bloch generator's kernel is more than one-dimensional
// (degenerate drive), so no unique steady state exists.
struct NonUniqueSteadyStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace thzmix
