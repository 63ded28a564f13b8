#pragma once

#include <stdexcept>
#include <string>

namespace fdassoc {

/// Argument outside the mathematical domain of a function (poles, divergent
/// integrals, probability-zero conditioning events).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A scenario or sweep description violates a documented constraint.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A requested computation is missing parameters it needs.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A simulation would exceed a configured resource cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fdassoc
