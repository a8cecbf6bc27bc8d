#pragma once

#include <stdexcept>
#include <string>

namespace gtwed {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data: bad sequences, mismatched
/// observation spaces, non-finite values, unparseable records.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration: unknown metric identifiers, out-of-range
/// parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace gtwed
