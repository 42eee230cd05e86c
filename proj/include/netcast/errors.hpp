#pragma once

#include <stdexcept>
#include <string>

namespace netcast {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Inconsistent or inadequate configuration (grid too coarse, bad flag).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// File could not be read, written or parsed.
class IoError : public Error {
public:
  using Error::Error;
};

/// A numerical procedure could not produce a result (e.g. unbracketed root).
class NumericalError : public Error {
public:
  using Error::Error;
};

} // namespace netcast
