#include "phasekit/resolve.hpp"

#include <algorithm>
#include <sstream>

#include "phasekit/errors.hpp"
#include "phasekit/polyalg.hpp"
#include "phasekit/sysdef.hpp"

namespace phasekit {

namespace {

const std::vector<std::string> kParams{"sigma", "epsilon", "b"};

RatExpr E(const std::string& s) { return parse_expression(s); }

RationalMap make_map(std::vector<std::string> src, std::vector<std::string> dst, const std::vector<std::string>& fwd,
                     const std::vector<std::string>& inv, std::string note) {
  std::vector<RatExpr> f;
  std::vector<RatExpr> g;
  for (const auto& s : fwd) f.push_back(E(s));
  for (const auto& s : inv) g.push_back(E(s));
  return RationalMap(std::move(src), std::move(dst), std::move(f), std::move(g), std::move(note));
}

std::string monomial_str(const std::vector<std::string>& vars, const std::vector<unsigned>& e) {
  std::string out;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (e[k] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[k];
    if (e[k] > 1) out += "^" + std::to_string(e[k]);
  }
  return out.empty() ? "1" : out;
}

/// Split p by monomials in `vars`; the coefficients keep every other variable.
std::vector<std::pair<std::string, MultiPoly>> split_by(const MultiPoly& p, const std::vector<std::string>& vars) {
  std::map<std::vector<unsigned>, MultiPoly> parts;
  const auto& pv = p.vars();
  for (const auto& [exp, c] : p.terms()) {
    std::vector<unsigned> key(vars.size(), 0);
    std::map<std::string, unsigned> rest;
    for (std::size_t j = 0; j < pv.size(); ++j) {
      if (exp[j] == 0) continue;
      auto it = std::find(vars.begin(), vars.end(), pv[j]);
      if (it != vars.end()) {
        key[static_cast<std::size_t>(it - vars.begin())] = exp[j];
      } else {
        rest[pv[j]] = exp[j];
      }
    }
    parts[key] += MultiPoly::monomial(c, rest);
  }
  std::vector<std::pair<std::string, MultiPoly>> out;
  for (const auto& [k, c] : parts) out.emplace_back(monomial_str(vars, k), c);
  return out;
}

ParameterTriple triple_at(const std::vector<GaussQ>& s, const std::vector<GaussQ>& e, const std::vector<GaussQ>& b,
                          std::size_t idx) {
  const std::size_t nb = b.size();
  const std::size_t ne = e.size();
  return {s[idx / (ne * nb)], e[(idx / nb) % ne], b[idx % nb]};
}

bool pipeline_polynomial(const ParameterTriple& t) {
  const std::map<std::string, GaussQ> values{{"sigma", t.sigma}, {"epsilon", t.epsilon}, {"b", t.b}};
  return apply_resolution(lorenz_field(), ResolutionCenter::P4, values).polynomial();
}

}  // namespace

VField lorenz_field() {
  return VField("lorenz", {"x", "y", "z"}, {E("y - sigma*epsilon*x"), E("-x*z + x - epsilon*y"), E("x*y - epsilon*b*z")},
                kParams);
}

std::vector<ResolutionStep> resolution_sequence_p4() {
  const std::string c3q = "epsilon/3*(b - 1)";
  const std::string c3r = "i*epsilon*(b - 2*sigma)";
  const std::string k = "(epsilon^2*(b - 1)*(7*b - 15*sigma + 2) - 9)";
  const std::string c4 = "i/9*" + k;
  auto c5 = [&](const std::string& r) { return "(4/3*epsilon*(b - 1)*" + r + " - 2/27*epsilon*(b + 2)*" + k + ")"; };
  std::vector<ResolutionStep> s;
  s.push_back({"Step 0", make_map({"X", "Y", "Z"}, {"p", "q", "r"}, {"X", "Y - i/2", "Z - 1/2"}, {"p", "q + i/2", "r + 1/2"}, "center"),
               "(X, Y, Z) = (0, i/2, 1/2)"});
  s.push_back({"Step 1", make_map({"p", "q", "r"}, {"p1", "q1", "r1"}, {"p", "q - i*r", "r"}, {"p1", "q1 + i*r1", "r1"}, "linear"),
               "diagonalize the linear part"});
  s.push_back({"Step 2",
               make_map({"p1", "q1", "r1"}, {"p2", "q2", "r2"}, {"p1", "q1/p1", "r1/p1"}, {"p2", "q2*p2", "r2*p2"}, "blow-up"),
               "(p1, q1, r1) = (0, 0, 0)"});
  s.push_back({"Step 3",
               make_map({"p2", "q2", "r2"}, {"p3", "q3", "r3"},
                        {"p2", "(q2 - " + c3q + ")/p2", "(r2 - " + c3r + ")/p2"},
                        {"p3", "q3*p3 + " + c3q, "r3*p3 + " + c3r}, "blow-up"),
               "(p2, q2, r2) = (0, " + c3q + ", " + c3r + ")"});
  s.push_back({"Step 4",
               make_map({"p3", "q3", "r3"}, {"p4", "q4", "r4"}, {"p3", "(q3 - " + c4 + ")/p3", "r3"},
                        {"p4", "q4*p4 + " + c4, "r4"}, "blow-up"),
               "p3 = 0, q3 = " + c4});
  s.push_back({"Step 5",
               make_map({"p4", "q4", "r4"}, {"u", "v", "w"}, {"p4", "(q4 - " + c5("r4") + ")/p4", "r4"},
                        {"u", "v*u + " + c5("w"), "w"}, "blow-up"),
               "p4 = 0, q4 = " + c5("r4")});
  return s;
}

std::vector<ResolutionStep> resolution_sequence(ResolutionCenter c) {
  auto s = resolution_sequence_p4();
  if (c == ResolutionCenter::P5) {
    for (auto& step : s) {
      step.map = step.map.conj();
      step.center += " (conjugated)";
    }
  }
  return s;
}

bool ResolutionResult::polynomial() const {
  return std::all_of(poles.begin(), poles.end(), [](const PolePart& p) { return p.coeff.is_zero(); });
}

ResolutionResult apply_resolution(const VField& v, ResolutionCenter c, const std::map<std::string, GaussQ>& values) {
  VField f = values.empty() ? v : v.with_params(values);
  f = pushforward(f, weighted_chart({1, 2, 2}).map);
  for (const auto& step : resolution_sequence(c)) {
    f = pushforward(f, values.empty() ? step.map : step.map.with_params(values));
  }
  ResolutionResult out;
  out.system = f;
  const auto& vars = f.statevars();
  const std::string u = vars[0];
  const std::vector<std::string> rest(vars.begin() + 1, vars.end());
  for (std::size_t k = 0; k < vars.size(); ++k) {
    const RatExpr& comp = f.component(k);
    const MultiPoly& den = comp.den();
    if (!den.is_monomial() || (!den.is_constant() && den.vars() != std::vector<std::string>{u})) {
      throw NotNormalForm("component d" + vars[k] + "/dt has denominator " + den.str());
    }
    const unsigned order = den.degree(u);
    const GaussQ scale = den.leading_coeff().inverse();
    const auto coeffs = (comp.num() * scale).coefficients(u);
    MultiPoly regular;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j].is_zero()) continue;
      if (j < order) {
        for (auto& [mono, cf] : split_by(coeffs[j], rest)) {
          out.poles.push_back({vars[k], static_cast<int>(j) - static_cast<int>(order), mono, cf});
        }
      } else {
        regular += coeffs[j] * MultiPoly::variable(u, static_cast<unsigned>(j - order));
      }
    }
    out.regular.push_back(regular);
  }
  return out;
}

std::vector<MultiPoly> resolution_conditions() {
  const std::vector<std::string> src{"epsilon*(b - 1)*(b - 2*sigma)*(b + 3*sigma - 1)", "(b - 1)*(b - 3*sigma + 1)",
                                     "(b^2 - 5*b - 2 - 3*(b - 2)*sigma)*(epsilon^2*(b - 1)*(7*b - 15*sigma + 2) - 9)",
                                     "epsilon*(b - 2*sigma)*(b + 3*sigma - 1)"};
  std::vector<MultiPoly> out;
  for (const auto& s : src) out.push_back(E(s).num());
  return out;
}

std::vector<ConditionMatch> match_conditions(const ResolutionResult& r) {
  // Pole parts in the order the conditions are listed: v at u^-2, the w and
  // constant parts of v at u^-1, then w at u^-1.
  const auto& vars = r.system.statevars();
  const std::vector<std::tuple<std::string, int, std::string>> keys{
      {vars[1], -2, "1"}, {vars[1], -1, vars[2]}, {vars[1], -1, "1"}, {vars[2], -1, "1"}};
  const auto conds = resolution_conditions();
  std::vector<ConditionMatch> out;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    ConditionMatch m;
    std::tie(m.component, m.power, m.monomial) = keys[k];
    for (const auto& p : r.poles) {
      if (p.component == m.component && p.power == m.power && p.monomial == m.monomial) m.coeff = p.coeff;
    }
    m.condition = conds[k];
    if (auto q = try_exact_div(m.coeff, m.condition); q && q->is_monomial()) m.ratio = *q;
    out.push_back(std::move(m));
  }
  return out;
}

bool check_resolvable(const ParameterTriple& t) {
  const std::map<std::string, GaussQ> at{{"sigma", t.sigma}, {"epsilon", t.epsilon}, {"b", t.b}};
  for (const auto& c : resolution_conditions()) {
    if (!c.evaluate(at).is_zero()) return false;
  }
  return true;
}

namespace {

/// Irreducible factors of each condition, as written.
std::vector<std::vector<MultiPoly>> condition_factors() {
  const std::vector<std::vector<std::string>> src{
      {"epsilon", "b - 1", "b - 2*sigma", "b + 3*sigma - 1"},
      {"b - 1", "b - 3*sigma + 1"},
      {"b^2 - 5*b - 2 - 3*(b - 2)*sigma", "epsilon^2*(b - 1)*(7*b - 15*sigma + 2) - 9"},
      {"epsilon", "b - 2*sigma", "b + 3*sigma - 1"}};
  std::vector<std::vector<MultiPoly>> out;
  for (const auto& row : src) {
    std::vector<MultiPoly> r;
    for (const auto& s : row) r.push_back(E(s).num());
    out.push_back(r);
  }
  return out;
}

std::map<std::string, RatExpr> bindings_of(const SolutionFamily& f) {
  std::map<std::string, RatExpr> b = f.values;
  for (const auto& v : f.free) b.emplace(v, RatExpr::variable(v));
  return b;
}

/// Every member of `small` is a member of `big`.
bool contained_in(const SolutionFamily& small, const SolutionFamily& big) {
  if (small.free.size() >= big.free.size()) return false;
  // Parametrize `big` by its free unknowns taken from `small`.
  std::map<std::string, RatExpr> at;
  const auto sb = bindings_of(small);
  for (const auto& v : big.free) at.emplace(v, sb.at(v));
  for (const auto& [v, e] : big.values) {
    try {
      if (e.substitute(at) != sb.at(v)) return false;
    } catch (const DivisionByZeroIdentically&) {
      return false;
    }
  }
  return true;
}

bool same_family(const SolutionFamily& a, const SolutionFamily& b) {
  return a.free == b.free && a.values == b.values;
}

}  // namespace

std::vector<SolutionFamily> solve_conditions() {
  const auto factors = condition_factors();
  const auto conds = resolution_conditions();
  std::vector<SolutionFamily> found;
  std::vector<std::size_t> pick(factors.size(), 0);
  while (true) {
    std::vector<MultiPoly> eqs;
    for (std::size_t k = 0; k < factors.size(); ++k) eqs.push_back(factors[k][pick[k]]);
    for (const auto& f : solve_system(eqs, kParams).exact) {
      if (std::none_of(found.begin(), found.end(), [&](const SolutionFamily& g) { return same_family(f, g); })) {
        found.push_back(f);
      }
    }
    std::size_t k = 0;
    while (k < pick.size() && pick[k] + 1 == factors[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
    ++pick[k];
  }
  std::vector<SolutionFamily> out;
  for (const auto& f : found) {
    const bool covered = std::any_of(found.begin(), found.end(), [&](const SolutionFamily& g) { return contained_in(f, g); });
    if (covered) continue;
    // Re-verify on the unfactored conditions.
    const auto b = bindings_of(f);
    for (const auto& c : conds) {
      if (!RatExpr(c).substitute(b).is_zero()) throw IdentityFailed("solve_conditions", RatExpr(c).substitute(b).str());
    }
    out.push_back(f);
  }
  std::sort(out.begin(), out.end(), [](const SolutionFamily& a, const SolutionFamily& b) {
    if (a.free.size() != b.free.size()) return a.free.size() > b.free.size();
    for (const auto& v : kParams) {
      auto ia = a.values.find(v);
      auto ib = b.values.find(v);
      if (ia == a.values.end() || ib == b.values.end()) continue;
      if (!ia->second.is_constant() || !ib->second.is_constant()) continue;
      const GaussQ x = ia->second.constant_value();
      const GaussQ y = ib->second.constant_value();
      if (x != y) return lex_less(x, y);
    }
    return false;
  });
  return out;
}

GridReport grid_check_serial(const std::vector<GaussQ>& sigmas, const std::vector<GaussQ>& epsilons,
                             const std::vector<GaussQ>& bs) {
  GridReport r;
  r.points = sigmas.size() * epsilons.size() * bs.size();
  for (std::size_t idx = 0; idx < r.points; ++idx) {
    const ParameterTriple t = triple_at(sigmas, epsilons, bs, idx);
    const bool expected = check_resolvable(t);
    if (expected) ++r.resolvable;
    if (expected != pipeline_polynomial(t)) r.mismatches.push_back(t);
  }
  return r;
}

GridReport grid_check(const std::vector<GaussQ>& sigmas, const std::vector<GaussQ>& epsilons,
                      const std::vector<GaussQ>& bs) {
  const std::size_t n = sigmas.size() * epsilons.size() * bs.size();
  std::vector<signed char> expected(n);
  std::vector<signed char> actual(n);
#pragma omp parallel for schedule(dynamic)
  for (long idx = 0; idx < static_cast<long>(n); ++idx) {
    const ParameterTriple t = triple_at(sigmas, epsilons, bs, static_cast<std::size_t>(idx));
    expected[static_cast<std::size_t>(idx)] = check_resolvable(t);
    actual[static_cast<std::size_t>(idx)] = pipeline_polynomial(t);
  }
  GridReport r;
  r.points = n;
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (expected[idx]) ++r.resolvable;
    if (expected[idx] != actual[idx]) r.mismatches.push_back(triple_at(sigmas, epsilons, bs, idx));
  }
  return r;
}

}  // namespace phasekit
