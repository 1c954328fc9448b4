#include "phasekit/field.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "phasekit/errors.hpp"

namespace phasekit {

namespace {

std::map<std::string, RatExpr> bindings_of(const std::vector<std::string>& names, const std::vector<RatExpr>& values) {
  std::map<std::string, RatExpr> out;
  for (std::size_t k = 0; k < names.size(); ++k) out.emplace(names[k], values[k]);
  return out;
}

std::map<std::string, RatExpr> as_bindings(const std::map<std::string, GaussQ>& values) {
  std::map<std::string, RatExpr> out;
  for (const auto& [k, v] : values) out.emplace(k, RatExpr(v));
  return out;
}

}  // namespace

VField::VField(std::string name, std::vector<std::string> statevars, std::vector<RatExpr> components,
               std::vector<std::string> params, std::vector<ExpSymbol> expsyms)
    : name_(std::move(name)),
      statevars_(std::move(statevars)),
      components_(std::move(components)),
      params_(std::move(params)),
      expsyms_(std::move(expsyms)) {
  if (statevars_.size() != components_.size()) {
    throw std::invalid_argument("VField " + name_ + ": " + std::to_string(statevars_.size()) + " variables but " +
                                std::to_string(components_.size()) + " components");
  }
  std::set<std::string> declared;
  auto declare = [&](const std::string& s) {
    if (!declared.insert(s).second) throw std::invalid_argument("VField " + name_ + ": symbol declared twice: " + s);
  };
  for (const auto& v : statevars_) declare(v);
  for (const auto& p : params_) declare(p);
  for (const auto& e : expsyms_) declare(e.name);
  for (const auto& c : components_) {
    for (const auto& v : c.vars()) {
      if (!declared.count(v)) throw std::invalid_argument("VField " + name_ + ": undeclared symbol " + v);
    }
  }
}

ExpRates VField::rates() const {
  ExpRates r;
  for (const auto& e : expsyms_) r.emplace(e.name, e.rate);
  return r;
}

bool VField::is_polynomial() const {
  return std::all_of(components_.begin(), components_.end(), [](const RatExpr& c) { return c.is_polynomial(); });
}

VField VField::with_params(const std::map<std::string, GaussQ>& values) const {
  const auto b = as_bindings(values);
  std::vector<RatExpr> comps;
  for (const auto& c : components_) comps.push_back(c.substitute(b));
  std::vector<std::string> rest;
  for (const auto& p : params_) {
    if (!values.count(p)) rest.push_back(p);
  }
  return VField(name_, statevars_, std::move(comps), std::move(rest), expsyms_);
}

VField VField::renamed(std::string name) const {
  VField out = *this;
  out.name_ = std::move(name);
  return out;
}

VField VField::conj() const {
  std::vector<RatExpr> comps;
  for (const auto& c : components_) comps.push_back(c.conj());
  std::vector<ExpSymbol> es = expsyms_;
  for (auto& e : es) e.rate = e.rate.conj();
  return VField(name_, statevars_, std::move(comps), params_, std::move(es));
}

RationalMap::RationalMap(Unchecked, std::vector<std::string> source, std::vector<std::string> target,
                         std::vector<RatExpr> forward, std::vector<RatExpr> inverse, std::string note)
    : source_(std::move(source)),
      target_(std::move(target)),
      forward_(std::move(forward)),
      inverse_(std::move(inverse)),
      note_(std::move(note)) {}

RationalMap::RationalMap(std::vector<std::string> source, std::vector<std::string> target,
                         std::vector<RatExpr> forward, std::vector<RatExpr> inverse, std::string note)
    : RationalMap(Unchecked{}, std::move(source), std::move(target), std::move(forward), std::move(inverse),
                  std::move(note)) {
  const std::size_t n = source_.size();
  if (target_.size() != n || forward_.size() != n || inverse_.size() != n) {
    throw std::invalid_argument("RationalMap: dimension mismatch");
  }
  const auto fwd = bindings_of(target_, forward_);
  for (std::size_t k = 0; k < n; ++k) {
    if (inverse_[k].substitute(fwd) != RatExpr::variable(source_[k])) {
      throw std::invalid_argument("RationalMap: inverse does not undo forward in component " + source_[k]);
    }
  }
  const auto inv = bindings_of(source_, inverse_);
  for (std::size_t k = 0; k < n; ++k) {
    if (forward_[k].substitute(inv) != RatExpr::variable(target_[k])) {
      throw std::invalid_argument("RationalMap: forward does not undo inverse in component " + target_[k]);
    }
  }
}

RationalMap RationalMap::identity(const std::vector<std::string>& vars) {
  std::vector<RatExpr> id;
  for (const auto& v : vars) id.push_back(RatExpr::variable(v));
  return RationalMap(Unchecked{}, vars, vars, id, id, "identity");
}

RationalMap RationalMap::inverted() const { return RationalMap(Unchecked{}, target_, source_, inverse_, forward_, note_); }

RationalMap RationalMap::then(const RationalMap& next) const {
  if (next.source_ != target_) throw std::invalid_argument("RationalMap::then: variable mismatch");
  const auto fwd = bindings_of(target_, forward_);
  const auto inv = bindings_of(next.source_, next.inverse_);
  std::vector<RatExpr> f;
  std::vector<RatExpr> g;
  for (const auto& c : next.forward_) f.push_back(c.substitute(fwd));
  for (const auto& c : inverse_) g.push_back(c.substitute(inv));
  return RationalMap(Unchecked{}, source_, next.target_, std::move(f), std::move(g), note_ + " ; " + next.note_);
}

RationalMap RationalMap::conj() const {
  std::vector<RatExpr> f;
  std::vector<RatExpr> g;
  for (const auto& c : forward_) f.push_back(c.conj());
  for (const auto& c : inverse_) g.push_back(c.conj());
  return RationalMap(Unchecked{}, source_, target_, std::move(f), std::move(g), note_);
}

RationalMap RationalMap::with_params(const std::map<std::string, GaussQ>& values) const {
  const auto b = as_bindings(values);
  std::vector<RatExpr> f;
  std::vector<RatExpr> g;
  for (const auto& c : forward_) f.push_back(c.substitute(b));
  for (const auto& c : inverse_) g.push_back(c.substitute(b));
  return RationalMap(Unchecked{}, source_, target_, std::move(f), std::move(g), note_);
}

namespace {

std::vector<GaussQ> eval_all(const std::vector<std::string>& vars, const std::vector<RatExpr>& exprs,
                             const std::vector<GaussQ>& point) {
  if (point.size() != vars.size()) throw std::invalid_argument("RationalMap::apply: wrong point dimension");
  std::map<std::string, GaussQ> at;
  for (std::size_t k = 0; k < vars.size(); ++k) at.emplace(vars[k], point[k]);
  std::vector<GaussQ> out;
  for (const auto& e : exprs) {
    RatExpr v = e.evaluate(at);
    if (!v.is_constant()) throw std::invalid_argument("RationalMap::apply: unbound symbols in " + e.str());
    out.push_back(v.constant_value());
  }
  return out;
}

}  // namespace

std::vector<GaussQ> RationalMap::apply(const std::vector<GaussQ>& point) const {
  return eval_all(source_, forward_, point);
}

std::vector<GaussQ> RationalMap::apply_inverse(const std::vector<GaussQ>& point) const {
  return eval_all(target_, inverse_, point);
}

std::string ChartedSystem::boundary_var() const {
  if (boundary.vars().size() != 1 || boundary != MultiPoly::variable(boundary.vars()[0])) {
    throw NotNormalForm("chart " + chart + " has no single-variable boundary");
  }
  return boundary.vars()[0];
}

RatExpr lie_derivative(const VField& v, const RatExpr& f) {
  RatExpr out = time_derivative(f, v.rates());
  for (std::size_t k = 0; k < v.dimension(); ++k) {
    if (!f.has_var(v.statevars()[k])) continue;
    out += f.derivative(v.statevars()[k]) * v.component(k);
  }
  return out;
}

VField pushforward(const VField& v, const RationalMap& m) {
  if (v.statevars() != m.source()) throw std::invalid_argument("pushforward: field and map variables differ");
  const auto inv = bindings_of(m.source(), m.inverse());
  std::vector<RatExpr> comps;
  for (const auto& phi : m.forward()) comps.push_back(lie_derivative(v, phi).substitute(inv));
  return VField(v.name(), m.target(), std::move(comps), v.params(), v.expsyms());
}

RatExpr divergence(const VField& v) {
  RatExpr out;
  for (std::size_t k = 0; k < v.dimension(); ++k) out += v.component(k).derivative(v.statevars()[k]);
  return out;
}

RatExpr determinant(const std::vector<std::vector<RatExpr>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return RatExpr(1);
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  RatExpr out;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<RatExpr>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<RatExpr> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(std::move(row));
    }
    RatExpr term = m[0][c] * determinant(minor);
    if (c % 2 == 0) {
      out += term;
    } else {
      out -= term;
    }
  }
  return out;
}

RatExpr jacobian_det(const RationalMap& m) {
  std::vector<std::vector<RatExpr>> jac;
  for (const auto& f : m.forward()) {
    std::vector<RatExpr> row;
    for (const auto& v : m.source()) row.push_back(f.derivative(v));
    jac.push_back(std::move(row));
  }
  return determinant(jac);
}

unsigned pole_order(const VField& v, const MultiPoly& boundary) {
  constexpr unsigned kCap = 16;
  if (boundary.is_constant()) {
    if (!v.is_polynomial()) throw NotNormalForm("field " + v.name() + " is not polynomial in a chart without boundary");
    return 0;
  }
  if (boundary.vars().size() != 1 || boundary != MultiPoly::variable(boundary.vars()[0])) {
    throw NotNormalForm("boundary " + boundary.str() + " is not a coordinate");
  }
  const std::string& b = boundary.vars()[0];
  unsigned order = 0;
  for (const auto& c : v.components()) {
    const MultiPoly& d = c.den();
    if (d.is_constant()) continue;
    if (d.vars().size() != 1 || d.vars()[0] != b || d.terms().size() != 1) {
      throw NotNormalForm("denominator " + d.str() + " is not a power of " + b);
    }
    order = std::max(order, d.degree(b));
  }
  if (order > kCap) throw NotNormalForm("pole order exceeds " + std::to_string(kCap));
  return order;
}

}  // namespace phasekit
