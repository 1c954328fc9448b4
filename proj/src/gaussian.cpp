#include "phasekit/gaussian.hpp"

#include <sstream>
#include <stdexcept>

namespace phasekit {

GaussQ::GaussQ(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussQ::GaussQ(long num, long den) : re_(num, den), im_(0) {
  if (den == 0) throw std::domain_error("GaussQ: zero denominator");
  re_.canonicalize();
}

bool GaussQ::is_gaussian_integer() const {
  return re_.get_den() == 1 && im_.get_den() == 1;
}

GaussQ GaussQ::inverse() const {
  if (is_zero()) throw std::domain_error("GaussQ: division by zero");
  mpq_class n = norm();
  return GaussQ(re_ / n, -im_ / n);
}

GaussQ GaussQ::pow(unsigned e) const {
  GaussQ result(1);
  GaussQ base = *this;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class rn = sqrt(n);
  mpz_class rd = sqrt(d);
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

std::optional<GaussQ> GaussQ::sqrt() const {
  if (is_zero()) return GaussQ(0);
  // sqrt(a+bi) = p + qi with p = sqrt((|z|+a)/2), q = sign(b) sqrt((|z|-a)/2)
  auto modulus = rational_sqrt(norm());
  if (!modulus) return std::nullopt;
  auto p = rational_sqrt((*modulus + re_) / 2);
  auto q = rational_sqrt((*modulus - re_) / 2);
  if (!p || !q) return std::nullopt;
  mpq_class qi = sgn(im_) < 0 ? mpq_class(-*q) : *q;
  GaussQ root(*p, qi);
  if (root * root != *this) return std::nullopt;
  return root;
}

GaussQ& GaussQ::operator+=(const GaussQ& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussQ& GaussQ::operator-=(const GaussQ& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussQ& GaussQ::operator*=(const GaussQ& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class m = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(m);
  return *this;
}

GaussQ& GaussQ::operator/=(const GaussQ& o) {
  if (o.is_zero()) throw std::domain_error("GaussQ: division by zero");
  if (o.is_real()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string GaussQ::str() const {
  std::ostringstream os;
  const bool has_re = sgn(re_) != 0;
  const bool has_im = sgn(im_) != 0;
  if (!has_re && !has_im) return "0";
  if (has_re) os << re_.get_str();
  if (has_im) {
    if (has_re && sgn(im_) > 0) os << '+';
    if (im_ == 1) {
      os << 'i';
    } else if (im_ == -1) {
      os << "-i";
    } else {
      os << im_.get_str() << "*i";
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussQ& g) { return os << g.str(); }

}  // namespace phasekit
