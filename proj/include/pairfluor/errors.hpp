#pragma once

#include <stdexcept>
#include <string>

namespace pairfluor {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public NumericalError {
 public:
  SingularSystemError(const std::string& what, double cond)
      : NumericalError(what), condition_(cond) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

class DegenerateSteadyStateError : public NumericalError {
 public:
  DegenerateSteadyStateError(const std::string& what, int kernel_dim)
      : NumericalError(what), kernel_dim_(kernel_dim) {}
  int kernel_dimension() const { return kernel_dim_; }

 private:
  int kernel_dim_;
};

class DegenerateEigenError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class UndefinedObservable : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class UnsupportedConfiguration : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pairfluor
