#pragma once

#include <string>
#include <vector>

#include "phasekit/charts.hpp"

namespace phasekit {

/// Leading-order behaviour x_k ~ c_k * tau^(-e_k) near a movable pole t = t1, tau = t - t1.
struct Balance {
  std::vector<unsigned> exponents;
  std::vector<GaussQ> coefficients;
  int branch = 0;

  std::string str() const;
};

/// Integer exponent vectors in [1, max_exp]^n whose minimal tau-order is
/// attained by at least two terms in every equation, with all exact nonzero
/// coefficient solutions over Q(i).
///
/// The field must be polynomial in the state variables. Exponent vectors
/// whose leading equations involve parameters or exponential symbols are
/// skipped.
std::vector<Balance> dominant_balances(const VField& v, unsigned max_exp = 6);

/// Leading tau-order coefficient of every equation after substituting the
/// balance; all zero for a genuine balance.
std::vector<GaussQ> balance_residuals(const VField& v, const Balance& b);

/// Weighted chart for the balance exponents, reduced by their gcd.
/// Throws IncompatibleWeights unless the first exponent divides the others.
Chart balance_to_chart(const Balance& b, const std::vector<std::string>& vars = {"x", "y", "z"},
                       std::vector<std::string> names = {});

}  // namespace phasekit
