#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "phasekit/poly.hpp"

namespace phasekit {

/// Time-derivative multipliers of exponential symbols: d(E)/dt = rate * E.
using ExpRates = std::map<std::string, GaussQ>;

/// Normalized quotient of two polynomials over Q(i).
///
/// After construction numerator and denominator are coprime and the leading
/// coefficient of the denominator is 1, so equality is structural.
class RatExpr {
 public:
  RatExpr() : den_(1) {}
  RatExpr(const MultiPoly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatExpr(const GaussQ& c) : num_(c), den_(1) {}     // NOLINT(google-explicit-constructor)
  RatExpr(long c) : num_(c), den_(1) {}              // NOLINT(google-explicit-constructor)
  /// Throws DivisionByZeroIdentically when `den` is the zero polynomial.
  RatExpr(MultiPoly num, MultiPoly den);

  static RatExpr variable(const std::string& name) { return RatExpr(MultiPoly::variable(name)); }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  GaussQ constant_value() const;
  std::vector<std::string> vars() const { return MultiPoly::merge_vars(num_.vars(), den_.vars()); }
  bool has_var(const std::string& v) const { return num_.has_var(v) || den_.has_var(v); }

  RatExpr pow(int e) const;
  RatExpr derivative(const std::string& var) const;
  RatExpr substitute(const std::map<std::string, RatExpr>& bindings) const;
  RatExpr evaluate(const std::map<std::string, GaussQ>& values) const;
  std::complex<double> evaluate_numeric(const std::map<std::string, std::complex<double>>& values) const;
  RatExpr conj() const;

  std::string str() const;

  RatExpr& operator+=(const RatExpr& o);
  RatExpr& operator-=(const RatExpr& o);
  RatExpr& operator*=(const RatExpr& o);
  RatExpr& operator/=(const RatExpr& o);
  friend RatExpr operator+(RatExpr a, const RatExpr& b) { return a += b; }
  friend RatExpr operator-(RatExpr a, const RatExpr& b) { return a -= b; }
  friend RatExpr operator*(RatExpr a, const RatExpr& b) { return a *= b; }
  friend RatExpr operator/(RatExpr a, const RatExpr& b) { return a /= b; }
  RatExpr operator-() const;

  friend bool operator==(const RatExpr& a, const RatExpr& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatExpr& a, const RatExpr& b) { return !(a == b); }

 private:
  struct Raw {};
  RatExpr(Raw, MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();
  void scale_denominator();

  MultiPoly num_;
  MultiPoly den_;
};

std::ostream& operator<<(std::ostream& os, const RatExpr& r);

/// Explicit time derivative: sum over exponential symbols of rate * E * df/dE.
RatExpr time_derivative(const RatExpr& f, const ExpRates& rates);

/// Substitute rational values into a polynomial over one common denominator.
RatExpr substitute_poly(const MultiPoly& p, const std::map<std::string, RatExpr>& bindings);

}  // namespace phasekit
