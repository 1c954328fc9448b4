#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "phasekit/gaussian.hpp"

namespace phasekit {

/// Multivariate polynomial over Q(i).
///
/// Variables are kept sorted by name and only variables that actually occur
/// are stored, so two polynomials are equal iff their representations are.
/// Exponent vectors are dense over `vars()`. Term order is lexicographic on
/// the exponent vector with the first (alphabetically smallest) variable most
/// significant; the leading term is the largest one.
class MultiPoly {
 public:
  using Exponent = std::vector<unsigned>;
  using TermMap = std::map<Exponent, GaussQ>;

  MultiPoly() = default;
  MultiPoly(const GaussQ& c);  // NOLINT(google-explicit-constructor)
  MultiPoly(long c) : MultiPoly(GaussQ(c)) {}  // NOLINT(google-explicit-constructor)

  static MultiPoly variable(const std::string& name, unsigned power = 1);
  static MultiPoly monomial(const GaussQ& c, const std::map<std::string, unsigned>& powers);
  /// Build from raw terms; zero coefficients and unused variables are dropped.
  static MultiPoly from_terms(std::vector<std::string> vars, TermMap terms);

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return vars_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  /// Constant coefficient (0 if absent).
  GaussQ constant_term() const;
  GaussQ leading_coeff() const;
  const Exponent& leading_exponent() const;

  int var_index(const std::string& name) const;
  bool has_var(const std::string& name) const { return var_index(name) >= 0; }
  unsigned degree(const std::string& name) const;
  unsigned min_degree(const std::string& name) const;
  unsigned total_degree() const;
  /// Smallest total degree over all terms (vanishing order at the origin).
  unsigned order() const;

  /// Coefficients of the univariate view in `var` (index = power).
  std::vector<MultiPoly> coefficients(const std::string& var) const;
  static MultiPoly from_coefficients(const std::string& var, const std::vector<MultiPoly>& coeffs);
  MultiPoly coefficient(const std::string& var, unsigned power) const;
  /// Coefficient of an exact monomial in the listed variables (other
  /// variables are left in the result).
  MultiPoly coefficient(const std::map<std::string, unsigned>& powers) const;

  MultiPoly substitute(const std::map<std::string, MultiPoly>& bindings) const;
  MultiPoly evaluate(const std::map<std::string, GaussQ>& values) const;
  std::complex<double> evaluate_numeric(const std::map<std::string, std::complex<double>>& values) const;
  MultiPoly derivative(const std::string& var) const;
  MultiPoly pow(unsigned e) const;
  MultiPoly conj() const;
  MultiPoly map_coefficients(const std::function<GaussQ(const GaussQ&)>& f) const;
  /// Largest monomial dividing every term (coefficient 1).
  MultiPoly monomial_content() const;

  /// Parseable canonical text, leading term first.
  std::string str() const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const GaussQ& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const GaussQ& c) { return a *= c; }
  friend MultiPoly operator*(const GaussQ& c, MultiPoly a) { return a *= c; }
  MultiPoly operator-() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  /// Sorted union of variable names.
  static std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                             const std::vector<std::string>& b);
  /// Terms re-expressed over a superset of `vars()`.
  TermMap aligned_terms(const std::vector<std::string>& target) const;

 private:
  void canonicalize();

  std::vector<std::string> vars_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

}  // namespace phasekit
