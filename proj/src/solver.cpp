#include "phasekit/solver.hpp"

#include <algorithm>
#include <optional>

#include "phasekit/errors.hpp"
#include "phasekit/polyalg.hpp"

namespace phasekit {

std::vector<GaussQ> SolutionFamily::point(const std::vector<std::string>& unknowns) const {
  std::vector<GaussQ> out;
  for (const auto& u : unknowns) {
    auto it = values.find(u);
    if (it == values.end() || !it->second.is_constant()) throw std::logic_error("solution is not a point");
    out.push_back(it->second.constant_value());
  }
  return out;
}

namespace {

using Families = std::vector<SolutionFamily>;

struct Ctx {
  std::set<std::string> nonzero;
  bool incomplete = false;
};

std::vector<std::string> without(std::vector<std::string> vs, const std::string& v) {
  vs.erase(std::remove(vs.begin(), vs.end(), v), vs.end());
  return vs;
}

/// Reduce an equation set: drop zeros, strip factors known to be nonzero,
/// normalize, dedupe. Returns nullopt if some equation is a nonzero constant.
std::optional<std::vector<MultiPoly>> normalize(const std::vector<MultiPoly>& eqs, const Ctx& ctx,
                                                const std::vector<MultiPoly>& nzp) {
  std::vector<MultiPoly> out;
  for (MultiPoly p : eqs) {
    if (p.is_zero()) continue;
    const MultiPoly mc = p.monomial_content();
    if (!mc.is_constant()) {
      std::map<std::string, unsigned> strip;
      for (const auto& v : mc.vars()) {
        if (ctx.nonzero.count(v)) strip[v] = mc.degree(v);
      }
      if (!strip.empty()) p = exact_div(p, MultiPoly::monomial(GaussQ(1), strip));
    }
    for (const auto& q : nzp) {
      if (q.is_constant()) continue;
      while (!p.is_constant()) {
        const MultiPoly g = gcd(p, q);
        if (g.is_constant()) break;
        p = exact_div(p, g);
      }
    }
    if (p.is_constant()) return std::nullopt;
    p = make_monic(p);
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  return out;
}

bool nonzero_ok(const std::vector<MultiPoly>& nzp) {
  return std::none_of(nzp.begin(), nzp.end(), [](const MultiPoly& q) { return q.is_zero(); });
}

std::vector<MultiPoly> substitute_all(const std::vector<MultiPoly>& ps, const std::string& v, const RatExpr& val) {
  std::vector<MultiPoly> out;
  const std::map<std::string, RatExpr> b{{v, val}};
  for (const auto& p : ps) {
    if (!p.has_var(v)) {
      out.push_back(p);
    } else if (val.is_polynomial()) {
      out.push_back(p.substitute({{v, val.num() * val.den().constant_term().inverse()}}));
    } else {
      out.push_back(substitute_poly(p, b).num());
    }
  }
  return out;
}

/// Value of `expr` on a family; nullopt if a denominator vanishes.
std::optional<RatExpr> on_family(const RatExpr& expr, const SolutionFamily& f) {
  try {
    return expr.substitute(f.values);
  } catch (const DivisionByZeroIdentically&) {
    return std::nullopt;
  }
}

Families solve_rec(std::vector<MultiPoly> eqs, const std::vector<std::string>& unknowns, std::vector<MultiPoly> nzp,
                   Ctx& ctx, int depth);

Families assign(const std::string& v, const RatExpr& val, const std::vector<MultiPoly>& eqs,
                const std::vector<std::string>& unknowns, const std::vector<MultiPoly>& nzp, Ctx& ctx, int depth,
                const std::optional<MultiPoly>& extra_nonzero = std::nullopt) {
  std::vector<MultiPoly> sub_nzp = substitute_all(nzp, v, val);
  if (extra_nonzero) sub_nzp.push_back(*extra_nonzero);
  if (!nonzero_ok(sub_nzp)) return {};
  Families out;
  for (auto& f : solve_rec(substitute_all(eqs, v, val), without(unknowns, v), sub_nzp, ctx, depth + 1)) {
    auto value = on_family(val, f);
    if (!value) continue;
    if (ctx.nonzero.count(v) && value->is_zero()) continue;
    f.values.emplace(v, *value);
    out.push_back(std::move(f));
  }
  return out;
}

Families solve_rec(std::vector<MultiPoly> eqs_in, const std::vector<std::string>& unknowns, std::vector<MultiPoly> nzp,
                   Ctx& ctx, int depth) {
  if (depth > 60) {
    ctx.incomplete = true;
    return {};
  }
  if (!nonzero_ok(nzp)) return {};
  auto norm = normalize(eqs_in, ctx, nzp);
  if (!norm) return {};
  std::vector<MultiPoly>& eqs = *norm;

  if (eqs.empty()) {
    SolutionFamily f;
    f.free = unknowns;
    return {f};
  }

  // Split on common factors: {g*a, g*b} = {g} or {a, b}.
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    for (std::size_t j = i + 1; j < eqs.size(); ++j) {
      const MultiPoly g = gcd(eqs[i], eqs[j]);
      if (g.is_constant()) continue;
      std::vector<MultiPoly> with_g;
      std::vector<MultiPoly> rest;
      for (std::size_t k = 0; k < eqs.size(); ++k) {
        if (k == i || k == j) continue;
        with_g.push_back(eqs[k]);
        rest.push_back(eqs[k]);
      }
      with_g.push_back(g);
      rest.push_back(exact_div(eqs[i], g));
      rest.push_back(exact_div(eqs[j], g));
      Families out = solve_rec(with_g, unknowns, nzp, ctx, depth + 1);
      for (auto& f : solve_rec(rest, unknowns, nzp, ctx, depth + 1)) out.push_back(std::move(f));
      return out;
    }
  }

  // Univariate equation: exact roots.
  const MultiPoly* uni = nullptr;
  for (const auto& e : eqs) {
    if (e.vars().size() == 1 && (!uni || e.total_degree() < uni->total_degree())) uni = &e;
  }
  if (uni) {
    const std::string v = uni->vars()[0];
    const auto roots = gaussian_roots(*uni, v);
    if (!roots.remainder.is_constant()) ctx.incomplete = true;
    std::vector<GaussQ> distinct;
    for (const auto& r : roots.exact) {
      if (std::find(distinct.begin(), distinct.end(), r) == distinct.end()) distinct.push_back(r);
    }
    Families out;
    for (const auto& r : distinct) {
      if (r.is_zero() && ctx.nonzero.count(v)) continue;
      for (auto& f : assign(v, RatExpr(r), eqs, unknowns, nzp, ctx, depth)) out.push_back(std::move(f));
    }
    return out;
  }

  // Linear equation in some unknown; prefer a constant coefficient.
  const MultiPoly* lin = nullptr;
  std::string lin_var;
  MultiPoly lin_coef;
  for (const auto& e : eqs) {
    for (const auto& v : e.vars()) {
      if (e.degree(v) != 1) continue;
      MultiPoly c = e.coefficient(v, 1);
      const bool better = !lin || (c.is_constant() && !lin_coef.is_constant()) ||
                          (c.is_constant() == lin_coef.is_constant() && c.terms().size() < lin_coef.terms().size());
      if (better) {
        lin = &e;
        lin_var = v;
        lin_coef = std::move(c);
      }
    }
  }
  if (lin) {
    const MultiPoly rest = *lin - lin_coef * MultiPoly::variable(lin_var);
    std::vector<MultiPoly> others;
    for (const auto& e : eqs) {
      if (&e != lin) others.push_back(e);
    }
    const RatExpr val(-rest, lin_coef);
    if (lin_coef.is_constant()) return assign(lin_var, val, others, unknowns, nzp, ctx, depth);
    Families out = assign(lin_var, val, others, unknowns, nzp, ctx, depth, lin_coef);
    std::vector<MultiPoly> degenerate = others;
    degenerate.push_back(lin_coef);
    degenerate.push_back(rest);
    for (auto& f : solve_rec(degenerate, unknowns, nzp, ctx, depth + 1)) out.push_back(std::move(f));
    return out;
  }

  // Eliminate one unknown with resultants, then back-substitute.
  std::string v;
  const MultiPoly* pivot = nullptr;
  for (const auto& e : eqs) {
    for (const auto& u : e.vars()) {
      if (!pivot || e.degree(u) < pivot->degree(v) ||
          (e.degree(u) == pivot->degree(v) && e.terms().size() < pivot->terms().size())) {
        pivot = &e;
        v = u;
      }
    }
  }
  std::vector<MultiPoly> reduced;
  std::vector<MultiPoly> with_v;
  for (const auto& e : eqs) {
    if (!e.has_var(v)) {
      reduced.push_back(e);
      continue;
    }
    with_v.push_back(e);
    if (&e == pivot) continue;
    MultiPoly r = resultant(*pivot, e, v);
    if (r.is_zero()) {
      ctx.incomplete = true;
      continue;
    }
    reduced.push_back(std::move(r));
  }
  std::vector<MultiPoly> reduced_nzp;
  std::vector<MultiPoly> nzp_with_v;
  for (const auto& q : nzp) (q.has_var(v) ? nzp_with_v : reduced_nzp).push_back(q);

  Families out;
  for (auto& f : solve_rec(reduced, without(unknowns, v), reduced_nzp, ctx, depth + 1)) {
    std::vector<MultiPoly> in_v;
    bool bad = false;
    for (const auto& e : with_v) {
      auto s = on_family(RatExpr(e), f);
      if (!s) {
        bad = true;
        break;
      }
      if (!s->is_zero()) in_v.push_back(s->num());
    }
    if (bad) continue;
    auto accept = [&](SolutionFamily g) {
      for (const auto& q : nzp_with_v) {
        auto s = on_family(RatExpr(q), g);
        if (!s || s->is_zero()) return;
      }
      out.push_back(std::move(g));
    };
    if (in_v.empty()) {
      f.free.push_back(v);
      accept(std::move(f));
      continue;
    }
    const MultiPoly g = make_monic(gcd(in_v));
    if (!g.has_var(v)) {
      if (!g.is_constant()) ctx.incomplete = true;
      continue;
    }
    if (g.vars().size() == 1) {
      const auto roots = gaussian_roots(g, v);
      if (!roots.remainder.is_constant()) ctx.incomplete = true;
      std::vector<GaussQ> distinct;
      for (const auto& r : roots.exact) {
        if (std::find(distinct.begin(), distinct.end(), r) == distinct.end()) distinct.push_back(r);
      }
      for (const auto& r : distinct) {
        if (r.is_zero() && ctx.nonzero.count(v)) continue;
        SolutionFamily h = f;
        h.values.emplace(v, RatExpr(r));
        accept(std::move(h));
      }
    } else if (g.degree(v) == 1) {
      const MultiPoly c = g.coefficient(v, 1);
      SolutionFamily h = f;
      h.values.emplace(v, RatExpr(-(g - c * MultiPoly::variable(v)), c));
      accept(std::move(h));
    } else {
      ctx.incomplete = true;
    }
  }
  return out;
}

bool same_family(const SolutionFamily& a, const SolutionFamily& b) {
  std::vector<std::string> fa = a.free;
  std::vector<std::string> fb = b.free;
  std::sort(fa.begin(), fa.end());
  std::sort(fb.begin(), fb.end());
  return fa == fb && a.values == b.values;
}

double residual_scale(const MultiPoly& p) {
  double s = 0;
  for (const auto& [e, c] : p.terms()) s = std::max(s, std::abs(c.to_complex()));
  return s;
}

void numeric_completion(const std::vector<MultiPoly>& eqs, const std::vector<std::string>& unknowns, const Ctx& ctx,
                        SolveResult& result) {
  using cd = std::complex<double>;
  std::vector<MultiPoly> live;
  for (const auto& e : eqs) {
    if (!e.is_zero()) live.push_back(e);
  }
  if (live.empty()) return;
  std::vector<std::vector<cd>> candidates;
  if (unknowns.size() == 1) {
    const MultiPoly g = gcd(live);
    if (g.is_constant()) return;
    for (const auto& r : numeric_roots(g, unknowns[0])) candidates.push_back({r});
  } else if (unknowns.size() == 2) {
    const std::string& u = unknowns[0];
    const std::string& w = unknowns[1];
    MultiPoly ru;
    MultiPoly rw;
    for (std::size_t i = 0; i < live.size() && (ru.is_zero() || rw.is_zero()); ++i) {
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        MultiPoly a = resultant(live[i], live[j], w);
        MultiPoly b = resultant(live[i], live[j], u);
        if (!a.is_zero() && !b.is_zero() && a.has_var(u) && b.has_var(w)) {
          ru = a;
          rw = b;
          break;
        }
      }
    }
    if (ru.is_zero() || rw.is_zero()) return;
    const auto us = numeric_roots(ru, u);
    const auto ws = numeric_roots(rw, w);
    for (const auto& a : us) {
      for (const auto& b : ws) candidates.push_back({a, b});
    }
  } else {
    return;
  }
  for (const auto& c : candidates) {
    std::map<std::string, cd> at;
    for (std::size_t k = 0; k < unknowns.size(); ++k) at[unknowns[k]] = c[k];
    bool ok = true;
    for (std::size_t k = 0; k < unknowns.size(); ++k) {
      if (ctx.nonzero.count(unknowns[k]) && std::abs(c[k]) < 1e-9) ok = false;
    }
    for (const auto& e : live) {
      double mag = 1.0;
      for (const auto& x : c) mag = std::max(mag, std::abs(x));
      const double tol = 1e-7 * residual_scale(e) * std::pow(mag, e.total_degree());
      if (std::abs(e.evaluate_numeric(at)) > tol) ok = false;
    }
    if (!ok) continue;
    auto near = [&](const std::vector<cd>& a, const std::vector<cd>& b) {
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (std::abs(a[k] - b[k]) > 1e-6 * (1 + std::abs(a[k]))) return false;
      }
      return true;
    };
    bool known = false;
    for (const auto& f : result.exact) {
      if (!f.is_point()) continue;
      std::vector<cd> p;
      for (const auto& x : f.point(unknowns)) p.push_back(x.to_complex());
      if (near(p, c)) known = true;
    }
    for (const auto& n : result.numeric) {
      if (near(n.values, c)) known = true;
    }
    if (!known) result.numeric.push_back({c});
  }
}

}  // namespace

SolveResult solve_system(const std::vector<MultiPoly>& eqs, const std::vector<std::string>& unknowns,
                         const std::set<std::string>& nonzero) {
  for (const auto& e : eqs) {
    for (const auto& v : e.vars()) {
      if (std::find(unknowns.begin(), unknowns.end(), v) == unknowns.end()) {
        throw std::invalid_argument("solve_system: symbol " + v + " is not an unknown");
      }
    }
  }
  Ctx ctx;
  ctx.nonzero = nonzero;
  SolveResult result;
  for (auto& f : solve_rec(eqs, unknowns, {}, ctx, 0)) {
    bool ok = true;
    for (const auto& e : eqs) {
      auto s = on_family(RatExpr(e), f);
      if (!s || !s->is_zero()) ok = false;
    }
    if (!ok) continue;
    std::sort(f.free.begin(), f.free.end());
    bool dup = false;
    for (const auto& g : result.exact) {
      if (same_family(f, g)) dup = true;
    }
    if (!dup) result.exact.push_back(std::move(f));
  }
  if (ctx.incomplete) {
    const std::size_t before = result.numeric.size();
    numeric_completion(eqs, unknowns, ctx, result);
    result.incomplete = unknowns.size() > 2 && result.numeric.size() == before;
  }
  std::sort(result.exact.begin(), result.exact.end(), [&](const SolutionFamily& a, const SolutionFamily& b) {
    if (a.free.size() != b.free.size()) return a.free.size() > b.free.size();
    for (const auto& u : unknowns) {
      auto ia = a.values.find(u);
      auto ib = b.values.find(u);
      const bool ha = ia != a.values.end();
      const bool hb = ib != b.values.end();
      if (ha != hb) return hb;
      if (!ha) continue;
      const std::string sa = ia->second.str();
      const std::string sb = ib->second.str();
      if (ia->second.is_constant() && ib->second.is_constant()) {
        const GaussQ ca = ia->second.constant_value();
        const GaussQ cb = ib->second.constant_value();
        if (ca != cb) return lex_less(ca, cb);
      } else if (sa != sb) {
        return sa < sb;
      }
    }
    return false;
  });
  return result;
}

}  // namespace phasekit
