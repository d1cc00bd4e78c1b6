#ifndef CPRLAB_ERRORS_HPP
#define CPRLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cprlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shape or zero-dimension violations.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Invalid argument values (negative bounds, zero half-width, ...).
class ParameterError : public Error {
public:
  using Error::Error;
};

/// Config file problems: unknown keys, type errors, cross-field violations.
/// Maps to CLI exit code 1.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Missing or unreadable input files. Maps to CLI exit code 1.
class IoError : public Error {
public:
  using Error::Error;
};

/// NaN/Inf encountered in gradients, losses, or parameters.
/// Maps to CLI exit code 2.
class NumericError : public Error {
public:
  using Error::Error;
};

/// API misuse, e.g. running a backward pass against a stale forward cache.
class ContractError : public Error {
public:
  using Error::Error;
};

} // namespace cprlab

#endif
