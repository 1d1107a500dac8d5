#pragma once

#include <stdexcept>
#include <string>

namespace extint {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Count or dimension out of range (too few points, k > number of pairs, ...).
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A quantity needed by the computation was not supplied (e.g. E[X^6]).
class UnavailableError : public Error {
 public:
  using Error::Error;
};

/// Zero variance or zero intensity.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// None of the moment conditions B1-B4 covers the declared profile.
class NoConditionError : public Error {
 public:
  using Error::Error;
};

/// Bad input data (NaN entries, malformed CSV).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Bad experiment or command configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace extint
