#pragma once

#include <stdexcept>
#include <string>

namespace knotkit {

/// Bad input: violated preconditions, malformed files, unknown names. CLI exit code 1.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: non-finite energies, near-double-point geometry. CLI exit code 2.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace knotkit
