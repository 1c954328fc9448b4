#pragma once

#include <complex>
#include <optional>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace phasekit {

/// Exact complex number re + im*i with arbitrary-precision rational parts.
///
/// Both parts are kept in canonical GMP form (reduced, positive denominator),
/// so structural equality is value equality.
class GaussQ {
 public:
  GaussQ() = default;
  GaussQ(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussQ(mpq_class re, mpq_class im = 0);
  GaussQ(long num, long den);

  static GaussQ i() { return GaussQ(mpq_class(0), mpq_class(1)); }
  static GaussQ from_parts(const mpq_class& re, const mpq_class& im) { return GaussQ(re, im); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_gaussian_integer() const;

  GaussQ conj() const { return GaussQ(re_, -im_); }
  /// re^2 + im^2
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  GaussQ inverse() const;
  GaussQ pow(unsigned e) const;

  /// Exact square root in Q(i) if one exists; the root with positive real
  /// part (or positive imaginary part when the real part vanishes).
  std::optional<GaussQ> sqrt() const;

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// Canonical text "a/b+c/d*i" (parts omitted when zero).
  std::string str() const;

  GaussQ& operator+=(const GaussQ& o);
  GaussQ& operator-=(const GaussQ& o);
  GaussQ& operator*=(const GaussQ& o);
  GaussQ& operator/=(const GaussQ& o);

  friend GaussQ operator+(GaussQ a, const GaussQ& b) { return a += b; }
  friend GaussQ operator-(GaussQ a, const GaussQ& b) { return a -= b; }
  friend GaussQ operator*(GaussQ a, const GaussQ& b) { return a *= b; }
  friend GaussQ operator/(GaussQ a, const GaussQ& b) { return a /= b; }
  GaussQ operator-() const { return GaussQ(-re_, -im_); }

  friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }

  /// Total order on (re, im); used only for deterministic sorting.
  friend bool lex_less(const GaussQ& a, const GaussQ& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

 private:
  mpq_class re_;
  mpq_class im_;
};

std::ostream& operator<<(std::ostream& os, const GaussQ& g);

/// Square root of a nonnegative rational if it is itself rational.
std::optional<mpq_class> rational_sqrt(const mpq_class& q);

}  // namespace phasekit
