#pragma once

#include <stdexcept>
#include <string>

namespace spdclat {

// Invalid user-supplied configuration. The CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// API misuse by calling code (wrong kind of argument, contract violation).
struct UsageError : std::logic_error {
    explicit UsageError(const std::string& msg) : std::logic_error(msg) {}
};

// Input outside a model's validity range.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Tolerance or internal-consistency failure in the numerics. Exit code 2.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace spdclat
