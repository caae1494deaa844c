#pragma once

#include <stdexcept>
#include <string>

namespace dgate {

struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Phonon truncation too small for the requested state or expansion.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A closed-form expression divides by a vanishing quantity.
struct SingularityError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NormDriftError : IntegrationError {
    using IntegrationError::IntegrationError;
};

} // namespace dgate
