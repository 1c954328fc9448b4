#include "phasekit/ratexpr.hpp"

#include <ostream>

#include "phasekit/errors.hpp"
#include "phasekit/polyalg.hpp"

namespace phasekit {

RatExpr::RatExpr(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

void RatExpr::scale_denominator() {
  const GaussQ lc = den_.leading_coeff();
  if (lc.is_one()) return;
  const GaussQ inv = lc.inverse();
  num_ *= inv;
  den_ *= inv;
}

void RatExpr::normalize() {
  if (den_.is_zero()) throw DivisionByZeroIdentically("rational expression with zero denominator");
  if (num_.is_zero()) {
    den_ = MultiPoly(1);
    return;
  }
  if (den_.is_constant()) {
    num_ *= den_.constant_term().inverse();
    den_ = MultiPoly(1);
    return;
  }
  const MultiPoly g = gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = exact_div(num_, g);
    den_ = exact_div(den_, g);
  }
  scale_denominator();
}

GaussQ RatExpr::constant_value() const {
  if (!is_constant()) throw std::logic_error("constant_value of non-constant expression " + str());
  return num_.constant_term() / den_.constant_term();
}

RatExpr RatExpr::operator-() const { return RatExpr(Raw{}, -num_, den_); }

RatExpr& RatExpr::operator+=(const RatExpr& o) {
  if (&o == this) return *this *= RatExpr(2);
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    normalize();
    return *this;
  }
  const MultiPoly g = gcd(den_, o.den_);
  if (g.is_constant()) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  } else {
    const MultiPoly a = exact_div(o.den_, g);
    const MultiPoly b = exact_div(den_, g);
    num_ = num_ * a + o.num_ * b;
    den_ = den_ * a;
  }
  normalize();
  return *this;
}

RatExpr& RatExpr::operator-=(const RatExpr& o) { return *this += -o; }

RatExpr& RatExpr::operator*=(const RatExpr& o) {
  if (is_zero() || o.is_zero()) return *this = RatExpr();
  // Cross-cancel; inputs are already reduced.
  const MultiPoly g1 = o.den_.is_constant() ? MultiPoly(1) : gcd(num_, o.den_);
  const MultiPoly g2 = den_.is_constant() ? MultiPoly(1) : gcd(o.num_, den_);
  MultiPoly n1 = g1.is_constant() ? num_ : exact_div(num_, g1);
  MultiPoly d2 = g1.is_constant() ? o.den_ : exact_div(o.den_, g1);
  MultiPoly n2 = g2.is_constant() ? o.num_ : exact_div(o.num_, g2);
  MultiPoly d1 = g2.is_constant() ? den_ : exact_div(den_, g2);
  num_ = n1 * n2;
  den_ = d1 * d2;
  if (den_.is_constant()) {
    num_ *= den_.constant_term().inverse();
    den_ = MultiPoly(1);
  } else {
    scale_denominator();
  }
  return *this;
}

RatExpr& RatExpr::operator/=(const RatExpr& o) {
  if (o.is_zero()) throw DivisionByZeroIdentically("division by zero expression");
  return *this *= RatExpr(Raw{}, o.den_, o.num_);
}

RatExpr RatExpr::pow(int e) const {
  if (e < 0) return RatExpr(1) / pow(-e);
  return RatExpr(Raw{}, num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

RatExpr RatExpr::derivative(const std::string& var) const {
  if (!has_var(var)) return RatExpr();
  if (den_.is_constant()) return RatExpr(Raw{}, num_.derivative(var), den_);
  if (!den_.has_var(var)) return RatExpr(num_.derivative(var), den_);
  return RatExpr(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

RatExpr substitute_poly(const MultiPoly& p, const std::map<std::string, RatExpr>& bindings) {
  std::map<std::string, MultiPoly> poly_bindings;
  bool all_poly = true;
  std::vector<std::pair<std::size_t, const RatExpr*>> bound;
  for (std::size_t k = 0; k < p.vars().size(); ++k) {
    auto it = bindings.find(p.vars()[k]);
    if (it == bindings.end()) continue;
    bound.emplace_back(k, &it->second);
    if (it->second.is_polynomial()) {
      poly_bindings.emplace(it->first, it->second.num() * it->second.den().constant_term().inverse());
    } else {
      all_poly = false;
    }
  }
  if (bound.empty()) return RatExpr(p);
  if (all_poly) return RatExpr(p.substitute(poly_bindings));

  // Common denominator prod d_v^{deg_v p}; each term gets n_v^e d_v^{D-e}.
  const auto& vars = p.vars();
  std::vector<unsigned> max_deg(vars.size(), 0);
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t k = 0; k < e.size(); ++k) max_deg[k] = std::max(max_deg[k], e[k]);
  }
  std::vector<std::vector<MultiPoly>> num_pow(vars.size());
  std::vector<std::vector<MultiPoly>> den_pow(vars.size());
  auto power = [](std::vector<MultiPoly>& cache, const MultiPoly& base, unsigned e) -> const MultiPoly& {
    if (cache.empty()) cache.push_back(MultiPoly(1));
    while (cache.size() <= e) cache.push_back(cache.back() * base);
    return cache[e];
  };
  std::vector<const RatExpr*> value(vars.size(), nullptr);
  for (const auto& [k, r] : bound) value[k] = r;

  MultiPoly numer;
  for (const auto& [e, c] : p.terms()) {
    MultiPoly term(c);
    std::map<std::string, unsigned> free_part;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (value[k] == nullptr) {
        if (e[k] != 0) free_part[vars[k]] = e[k];
        continue;
      }
      if (e[k] != 0) term *= power(num_pow[k], value[k]->num(), e[k]);
      if (max_deg[k] != e[k]) term *= power(den_pow[k], value[k]->den(), max_deg[k] - e[k]);
    }
    if (!free_part.empty()) term *= MultiPoly::monomial(GaussQ(1), free_part);
    numer += term;
  }
  MultiPoly denom(1);
  for (const auto& [k, r] : bound) denom *= power(den_pow[k], r->den(), max_deg[k]);
  return RatExpr(numer, denom);
}

RatExpr RatExpr::substitute(const std::map<std::string, RatExpr>& bindings) const {
  RatExpr n = substitute_poly(num_, bindings);
  if (den_.is_constant()) return n * RatExpr(den_.constant_term().inverse());
  RatExpr d = substitute_poly(den_, bindings);
  if (d.is_zero()) throw DivisionByZeroIdentically("substitution makes denominator " + den_.str() + " vanish");
  return n / d;
}

RatExpr RatExpr::evaluate(const std::map<std::string, GaussQ>& values) const {
  MultiPoly d = den_.evaluate(values);
  if (d.is_zero()) throw DivisionByZeroIdentically("evaluation makes denominator " + den_.str() + " vanish");
  return RatExpr(num_.evaluate(values), d);
}

std::complex<double> RatExpr::evaluate_numeric(const std::map<std::string, std::complex<double>>& values) const {
  return num_.evaluate_numeric(values) / den_.evaluate_numeric(values);
}

RatExpr RatExpr::conj() const { return RatExpr(num_.conj(), den_.conj()); }

std::string RatExpr::str() const {
  if (den_.is_constant()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const RatExpr& r) { return os << r.str(); }

RatExpr time_derivative(const RatExpr& f, const ExpRates& rates) {
  RatExpr out;
  for (const auto& [name, rate] : rates) {
    if (!f.has_var(name)) continue;
    out += RatExpr(MultiPoly::variable(name) * rate) * f.derivative(name);
  }
  return out;
}

}  // namespace phasekit
