#pragma once

#include <stdexcept>
#include <string>

namespace autochaos {

/// Raised when a dataset file does not match its manifest.
class IngestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for invalid option values or combinations, before any computation.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace autochaos
