#pragma once

#include <stdexcept>
#include <string>

namespace cmx {

// Bad input from the caller: wrong dimensions, unknown names, malformed data.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A well-formed request that could not be completed numerically.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public NumericalError {
 public:
  NonConvergence(const std::string& what, double best_residual)
      : NumericalError(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

class DegeneratePencil : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularSystem : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InconsistentFit : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace cmx
