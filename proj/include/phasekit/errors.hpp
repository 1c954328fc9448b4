#pragma once

#include <stdexcept>
#include <string>

namespace phasekit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact polynomial division left a nonzero remainder.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

/// A denominator became the zero polynomial.
class DivisionByZeroIdentically : public Error {
 public:
  using Error::Error;
};

class IncompatibleWeights : public Error {
 public:
  using Error::Error;
};

/// Boundary system is not in the log-pole normal form required by the
/// singularity analysis (wrong pole structure or non-monomial denominators).
class NotNormalForm : public Error {
 public:
  using Error::Error;
};

class PositiveDimensionalLocus : public Error {
 public:
  using Error::Error;
};

class IdentityFailed : public Error {
 public:
  IdentityFailed(const std::string& what, std::string residual)
      : Error(what + ": residual " + residual), residual_(std::move(residual)) {}
  const std::string& residual() const { return residual_; }

 private:
  std::string residual_;
};

}  // namespace phasekit
