#pragma once

#include <stdexcept>
#include <string>

namespace ifn {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gamma-function argument at a non-positive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the region an evaluator implements.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Series, quadrature or contour refinement failed to meet its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A pole sits on (or the pole sets cannot be separated by) the contour.
class ContourError : public Error {
 public:
  using Error::Error;
};

/// A model object violates one of its structural invariants.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// An operator hypothesis (strict inequality) does not hold.
class HypothesisError : public Error {
 public:
  HypothesisError(const std::string& condition, const std::string& what)
      : Error(what), condition_(condition) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// Malformed model document. `path` is the JSON pointer of the bad field.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace ifn
