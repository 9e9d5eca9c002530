#pragma once

#include <stdexcept>
#include <string>

namespace popdyn {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value is outside the domain of an operation (bad order, negative
/// coefficient, identity generator, non-population generator, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A requested object exceeds a size or overflow limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Two operands live over different groups.
class GroupMismatchError : public Error {
 public:
  using Error::Error;
};

/// An experiment configuration failed validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written; the message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed to converge or produced unusable output.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace popdyn
