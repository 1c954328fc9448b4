#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "phasekit/poly.hpp"

namespace phasekit {

/// Quotient q with a = q*b; throws NotDivisible otherwise.
MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b);
std::optional<MultiPoly> try_exact_div(const MultiPoly& a, const MultiPoly& b);

/// Scale so the leading coefficient is 1 (zero stays zero).
MultiPoly make_monic(const MultiPoly& p);

/// Monic greatest common divisor over Q(i).
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);
MultiPoly gcd(const std::vector<MultiPoly>& ps);

/// gcd of the coefficients of `p` viewed as a polynomial in `var`.
MultiPoly content(const MultiPoly& p, const std::string& var);

/// Sylvester resultant with respect to `var`.
MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, const std::string& var);

/// p / gcd(p, dp/dvar).
MultiPoly square_free_part(const MultiPoly& p, const std::string& var);

/// Roots of a univariate polynomial found over Q(i).
struct GaussianRootSet {
  /// Exact roots, repeated according to multiplicity, in ascending (re, im).
  std::vector<GaussQ> exact;
  /// Cofactor carrying every root outside Q(i) (constant if none).
  MultiPoly remainder;
};

/// Exact Q(i) roots of `p`, which must involve no variable other than `var`.
///
/// Candidates are u*d1/d2 with d1 | trailing and d2 | leading coefficient in
/// Z[i] (after clearing denominators) and u a unit; each is verified exactly.
GaussianRootSet gaussian_roots(const MultiPoly& p, const std::string& var);

/// Numerical roots (Aberth iteration plus Newton polishing); `coeffs[k]` is
/// the coefficient of t^k.
std::vector<std::complex<double>> numeric_roots(const std::vector<std::complex<double>>& coeffs);
std::vector<std::complex<double>> numeric_roots(const MultiPoly& p, const std::string& var);

/// Gaussian-integer divisors of g (one representative per associate class,
/// with re > 0 and im >= 0). Empty if |g|^2 exceeds `norm_cap`.
std::vector<GaussQ> gaussian_divisors(const GaussQ& g, unsigned long long norm_cap = 1000000000000ULL);

}  // namespace phasekit
