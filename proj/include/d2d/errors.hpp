// Exception hierarchy shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace d2d {

// Bad or inconsistent scenario configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Geometry that cannot support finite channel gains (zero-length links,
// rejection-sampling retry cap exceeded).
class DegenerateGeometryError : public std::runtime_error {
public:
    explicit DegenerateGeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

// Exponential-mixture construction rejected because two decay rates are
// too close to separate numerically.
class DegenerateRatesError : public std::runtime_error {
public:
    explicit DegenerateRatesError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite value produced by a numeric routine.
class NumericFailureError : public std::runtime_error {
public:
    explicit NumericFailureError(const std::string& msg) : std::runtime_error(msg) {}
};

// A state that the library's own invariants rule out (CLI exit code 2).
class InternalConsistencyError : public std::logic_error {
public:
    explicit InternalConsistencyError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace d2d
