#pragma once

#include <stdexcept>
#include <string>

namespace sfwm {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent configuration (unknown keys, misaligned pumps, bad topology).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed or unusable input data (CSV rows, unsorted timestamps, empty streams).
class DataError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Requested interval lies outside a sampled range.
class RangeError : public DomainError {
public:
    using DomainError::DomainError;
};

class TopologyError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class UsageError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

}  // namespace sfwm
