#pragma once

#include <stdexcept>
#include <string>

namespace fracio {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gamma function evaluated at a nonpositive integer.
class PoleError : public Error {
 public:
  explicit PoleError(double x)
      : Error("gamma pole at x = " + std::to_string(x)), x_(x) {}
  [[nodiscard]] double where() const noexcept { return x_; }

 private:
  double x_;
};

/// A numerical procedure failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// An asymptotic expansion was requested outside its domain of validity.
class RegimeError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  SingularMatrixError(const std::string& what, double det_magnitude)
      : Error(what), det_(det_magnitude) {}
  [[nodiscard]] double determinant_magnitude() const noexcept { return det_; }

 private:
  double det_;
};

/// Two eigenvalues closer than the separation tolerance; the modal expansion
/// needs a full eigenbasis.
class DegenerateSpectrumError : public Error {
 public:
  using Error::Error;
};

class NotNonnegativeError : public Error {
 public:
  using Error::Error;
};

/// The modulus-maximal eigenvalue is not real and positive.
class NonDominantError : public Error {
 public:
  using Error::Error;
};

class IllConditionedError : public Error {
 public:
  IllConditionedError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  [[nodiscard]] double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Numerical integration blew up (solution magnitude beyond the guard).
class InstabilityError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string field, int line = 0)
      : Error(what), field_(std::move(field)), line_(line) {}
  [[nodiscard]] const std::string& field() const noexcept { return field_; }
  [[nodiscard]] int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

}  // namespace fracio
