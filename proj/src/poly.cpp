#include "phasekit/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace phasekit {

MultiPoly::MultiPoly(const GaussQ& c) {
  if (!c.is_zero()) terms_.emplace(Exponent{}, c);
}

MultiPoly MultiPoly::variable(const std::string& name, unsigned power) {
  if (power == 0) return MultiPoly(1);
  MultiPoly p;
  p.vars_ = {name};
  p.terms_.emplace(Exponent{power}, GaussQ(1));
  return p;
}

MultiPoly MultiPoly::monomial(const GaussQ& c, const std::map<std::string, unsigned>& powers) {
  std::vector<std::string> vars;
  Exponent e;
  for (const auto& [name, pw] : powers) {
    vars.push_back(name);
    e.push_back(pw);
  }
  TermMap t;
  t.emplace(std::move(e), c);
  return from_terms(std::move(vars), std::move(t));
}

MultiPoly MultiPoly::from_terms(std::vector<std::string> vars, TermMap terms) {
  MultiPoly p;
  if (!std::is_sorted(vars.begin(), vars.end())) {
    // Permute exponent columns into sorted variable order.
    std::vector<std::size_t> idx(vars.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vars[a] < vars[b]; });
    std::vector<std::string> sorted;
    for (auto k : idx) sorted.push_back(vars[k]);
    TermMap remapped;
    for (auto& [e, c] : terms) {
      Exponent ne(idx.size());
      for (std::size_t k = 0; k < idx.size(); ++k) ne[k] = e[idx[k]];
      auto [it, fresh] = remapped.try_emplace(std::move(ne), c);
      if (!fresh) it->second += c;
    }
    vars = std::move(sorted);
    terms = std::move(remapped);
  }
  for (std::size_t k = 1; k < vars.size(); ++k) {
    if (vars[k] == vars[k - 1]) throw std::invalid_argument("MultiPoly: duplicate variable " + vars[k]);
  }
  p.vars_ = std::move(vars);
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

void MultiPoly::canonicalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero()) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  if (vars_.empty()) return;
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_) {
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] != 0) used[k] = true;
    }
  }
  if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
  std::vector<std::string> nv;
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    if (used[k]) {
      nv.push_back(vars_[k]);
      keep.push_back(k);
    }
  }
  TermMap nt;
  for (auto& [e, c] : terms_) {
    Exponent ne;
    ne.reserve(keep.size());
    for (auto k : keep) ne.push_back(e[k]);
    nt.emplace(std::move(ne), c);
  }
  vars_ = std::move(nv);
  terms_ = std::move(nt);
}

std::vector<std::string> MultiPoly::merge_vars(const std::vector<std::string>& a,
                                               const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

MultiPoly::TermMap MultiPoly::aligned_terms(const std::vector<std::string>& target) const {
  if (target == vars_) return terms_;
  std::vector<std::size_t> pos(vars_.size());
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    auto it = std::lower_bound(target.begin(), target.end(), vars_[k]);
    if (it == target.end() || *it != vars_[k]) throw std::logic_error("aligned_terms: target lacks " + vars_[k]);
    pos[k] = static_cast<std::size_t>(it - target.begin());
  }
  TermMap out;
  for (const auto& [e, c] : terms_) {
    Exponent ne(target.size(), 0);
    for (std::size_t k = 0; k < e.size(); ++k) ne[pos[k]] = e[k];
    out.emplace_hint(out.end(), std::move(ne), c);
  }
  return out;
}

GaussQ MultiPoly::constant_term() const {
  if (terms_.empty()) return GaussQ(0);
  const auto& [e, c] = *terms_.begin();
  for (auto v : e) {
    if (v != 0) return GaussQ(0);
  }
  return c;
}

GaussQ MultiPoly::leading_coeff() const {
  if (terms_.empty()) return GaussQ(0);
  return terms_.rbegin()->second;
}

const MultiPoly::Exponent& MultiPoly::leading_exponent() const {
  if (terms_.empty()) throw std::logic_error("leading_exponent of zero polynomial");
  return terms_.rbegin()->first;
}

int MultiPoly::var_index(const std::string& name) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
  if (it == vars_.end() || *it != name) return -1;
  return static_cast<int>(it - vars_.begin());
}

unsigned MultiPoly::degree(const std::string& name) const {
  int k = var_index(name);
  if (k < 0) return 0;
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(k)]);
  return d;
}

unsigned MultiPoly::min_degree(const std::string& name) const {
  int k = var_index(name);
  if (k < 0 || terms_.empty()) return 0;
  unsigned d = ~0U;
  for (const auto& [e, c] : terms_) d = std::min(d, e[static_cast<std::size_t>(k)]);
  return d;
}

unsigned MultiPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (auto v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

unsigned MultiPoly::order() const {
  unsigned d = ~0U;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (auto v : e) s += v;
    d = std::min(d, s);
  }
  return terms_.empty() ? 0 : d;
}

std::vector<MultiPoly> MultiPoly::coefficients(const std::string& var) const {
  int k = var_index(var);
  if (k < 0) return {*this};
  const auto kk = static_cast<std::size_t>(k);
  std::vector<TermMap> parts(degree(var) + 1);
  for (const auto& [e, c] : terms_) {
    Exponent ne = e;
    ne[kk] = 0;
    parts[e[kk]].emplace(std::move(ne), c);
  }
  std::vector<MultiPoly> out;
  out.reserve(parts.size());
  for (auto& t : parts) out.push_back(from_terms(vars_, std::move(t)));
  return out;
}

MultiPoly MultiPoly::from_coefficients(const std::string& var, const std::vector<MultiPoly>& coeffs) {
  MultiPoly out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    out += coeffs[k] * variable(var, static_cast<unsigned>(k));
  }
  return out;
}

MultiPoly MultiPoly::coefficient(const std::string& var, unsigned power) const {
  int k = var_index(var);
  if (k < 0) return power == 0 ? *this : MultiPoly();
  const auto kk = static_cast<std::size_t>(k);
  TermMap t;
  for (const auto& [e, c] : terms_) {
    if (e[kk] != power) continue;
    Exponent ne = e;
    ne[kk] = 0;
    t.emplace(std::move(ne), c);
  }
  return from_terms(vars_, std::move(t));
}

MultiPoly MultiPoly::coefficient(const std::map<std::string, unsigned>& powers) const {
  std::vector<std::pair<std::size_t, unsigned>> want;
  for (const auto& [name, pw] : powers) {
    int k = var_index(name);
    if (k < 0) {
      if (pw != 0) return MultiPoly();
      continue;
    }
    want.emplace_back(static_cast<std::size_t>(k), pw);
  }
  TermMap t;
  for (const auto& [e, c] : terms_) {
    bool match = true;
    for (const auto& [k, pw] : want) {
      if (e[k] != pw) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    Exponent ne = e;
    for (const auto& [k, pw] : want) ne[k] = 0;
    t.emplace(std::move(ne), c);
  }
  return from_terms(vars_, std::move(t));
}

MultiPoly MultiPoly::substitute(const std::map<std::string, MultiPoly>& bindings) const {
  std::vector<const MultiPoly*> bound(vars_.size(), nullptr);
  bool any = false;
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    auto it = bindings.find(vars_[k]);
    if (it != bindings.end()) {
      bound[k] = &it->second;
      any = true;
    }
  }
  if (!any) return *this;
  std::vector<std::vector<MultiPoly>> powers(vars_.size());
  auto power_of = [&](std::size_t k, unsigned e) -> const MultiPoly& {
    auto& cache = powers[k];
    if (cache.empty()) cache.push_back(MultiPoly(1));
    while (cache.size() <= e) cache.push_back(cache.back() * *bound[k]);
    return cache[e];
  };
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    std::map<std::string, unsigned> free_part;
    MultiPoly term(c);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (bound[k] != nullptr) {
        term *= power_of(k, e[k]);
      } else {
        free_part[vars_[k]] = e[k];
      }
    }
    if (!free_part.empty()) term *= monomial(GaussQ(1), free_part);
    out += term;
  }
  return out;
}

MultiPoly MultiPoly::evaluate(const std::map<std::string, GaussQ>& values) const {
  std::vector<const GaussQ*> bound(vars_.size(), nullptr);
  bool any = false;
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    auto it = values.find(vars_[k]);
    if (it != values.end()) {
      bound[k] = &it->second;
      any = true;
    }
  }
  if (!any) return *this;
  TermMap out;
  for (const auto& [e, c] : terms_) {
    GaussQ coeff = c;
    Exponent ne = e;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (bound[k] != nullptr && e[k] != 0) {
        coeff *= bound[k]->pow(e[k]);
        ne[k] = 0;
      }
    }
    if (coeff.is_zero()) continue;
    auto [it, fresh] = out.try_emplace(std::move(ne), coeff);
    if (!fresh) it->second += coeff;
  }
  return from_terms(vars_, std::move(out));
}

std::complex<double> MultiPoly::evaluate_numeric(const std::map<std::string, std::complex<double>>& values) const {
  std::vector<std::complex<double>> v(vars_.size());
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    auto it = values.find(vars_[k]);
    if (it == values.end()) throw std::invalid_argument("evaluate_numeric: no value for " + vars_[k]);
    v[k] = it->second;
  }
  std::complex<double> sum = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (std::size_t k = 0; k < e.size(); ++k) {
      for (unsigned j = 0; j < e[k]; ++j) t *= v[k];
    }
    sum += t;
  }
  return sum;
}

MultiPoly MultiPoly::derivative(const std::string& var) const {
  int k = var_index(var);
  if (k < 0) return MultiPoly();
  const auto kk = static_cast<std::size_t>(k);
  TermMap t;
  for (const auto& [e, c] : terms_) {
    if (e[kk] == 0) continue;
    Exponent ne = e;
    ne[kk] -= 1;
    t.emplace(std::move(ne), c * GaussQ(static_cast<long>(e[kk])));
  }
  return from_terms(vars_, std::move(t));
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result(1);
  MultiPoly base = *this;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::conj() const {
  return map_coefficients([](const GaussQ& c) { return c.conj(); });
}

MultiPoly MultiPoly::map_coefficients(const std::function<GaussQ(const GaussQ&)>& f) const {
  TermMap t;
  for (const auto& [e, c] : terms_) t.emplace(e, f(c));
  return from_terms(vars_, std::move(t));
}

MultiPoly MultiPoly::monomial_content() const {
  if (terms_.empty()) return MultiPoly();
  Exponent m(vars_.size(), ~0U);
  for (const auto& [e, c] : terms_) {
    for (std::size_t k = 0; k < e.size(); ++k) m[k] = std::min(m[k], e[k]);
  }
  TermMap t;
  t.emplace(m, GaussQ(1));
  return from_terms(vars_, std::move(t));
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.is_zero()) return *this;
  if (&o == this) return *this *= GaussQ(2);
  if (vars_ != o.vars_) {
    auto target = merge_vars(vars_, o.vars_);
    if (target != vars_) {
      terms_ = aligned_terms(target);
      vars_ = target;
    }
    for (auto& [e, c] : o.aligned_terms(vars_)) {
      auto [it, fresh] = terms_.try_emplace(e, c);
      if (!fresh) it->second += c;
    }
  } else {
    for (const auto& [e, c] : o.terms_) {
      auto [it, fresh] = terms_.try_emplace(e, c);
      if (!fresh) it->second += c;
    }
  }
  canonicalize();
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return MultiPoly();
  if (a.is_constant()) return b * a.constant_term();
  if (b.is_constant()) return a * b.constant_term();
  auto target = MultiPoly::merge_vars(a.vars_, b.vars_);
  const auto ta = a.aligned_terms(target);
  const auto tb = b.aligned_terms(target);
  MultiPoly::TermMap out;
  MultiPoly::Exponent e(target.size());
  for (const auto& [ea, ca] : ta) {
    for (const auto& [eb, cb] : tb) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      auto [it, fresh] = out.try_emplace(e, ca);
      if (fresh) {
        it->second *= cb;
      } else {
        it->second += ca * cb;
      }
    }
  }
  MultiPoly r;
  r.vars_ = std::move(target);
  r.terms_ = std::move(out);
  r.canonicalize();
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const GaussQ& c) {
  if (c.is_zero()) {
    vars_.clear();
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

namespace {

std::string monomial_text(const std::vector<std::string>& vars, const MultiPoly::Exponent& e) {
  std::string out;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars[k];
    if (e[k] > 1) out += '^' + std::to_string(e[k]);
  }
  return out;
}

}  // namespace

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const std::string mono = monomial_text(vars_, e);
    // Sign is pulled out for real and purely imaginary coefficients.
    bool negative = false;
    std::string mag;
    if (c.is_real()) {
      negative = sgn(c.re()) < 0;
      mpq_class a = abs(c.re());
      mag = (a == 1 && !mono.empty()) ? "" : a.get_str();
    } else if (sgn(c.re()) == 0) {
      negative = sgn(c.im()) < 0;
      mpq_class a = abs(c.im());
      mag = a == 1 ? "i" : a.get_str() + "*i";
    } else {
      mag = "(" + c.str() + ")";
    }
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    os << mag;
    if (!mono.empty()) {
      if (!mag.empty()) os << '*';
      os << mono;
    }
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

}  // namespace phasekit
