#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ellq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid modular/Planck data or other out-of-domain parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A theta factor with negative exponent was evaluated on (or too close to) its zero lattice.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Incompatible bases, matrix sizes or module parameters.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A leading term or diagonal block could not be inverted.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// An assertion was requested beyond the truncation-safe band of a module.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Series with leading exponents in different alpha_0 + 2Z cosets were mixed.
class GradingError : public Error {
 public:
  using Error::Error;
};

/// A module violates one of the category-O conditions checked at runtime.
class CategoryError : public Error {
 public:
  using Error::Error;
};

/// Newton iteration did not converge.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed run configuration; `field` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace ellq
