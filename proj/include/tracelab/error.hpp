#ifndef TRACELAB_ERROR_HPP
#define TRACELAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace tracelab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value lies outside the interval or set an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NonCommutingError : public Error {
 public:
  using Error::Error;
};

/// Matrix too close to singular for an inverse, log or determinant.
class SingularError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iterative or limiting procedure did not meet its accuracy target.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace tracelab

#endif  // TRACELAB_ERROR_HPP
