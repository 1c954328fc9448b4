#include "phasekit/singular.hpp"

#include <algorithm>
#include <sstream>

#include "phasekit/errors.hpp"
#include "phasekit/polyalg.hpp"

namespace phasekit {

namespace {

const char* const kLambda = "lambda__";

bool is_origin(const std::vector<GaussQ>& p) {
  return std::all_of(p.begin(), p.end(), [](const GaussQ& g) { return g.is_zero(); });
}

/// Descending (re, im) order on points, origin first.
bool point_before(const std::vector<GaussQ>& a, const std::vector<GaussQ>& b) {
  if (is_origin(a) != is_origin(b)) return is_origin(a);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != b[k]) return lex_less(b[k], a[k]);
  }
  return false;
}

unsigned order_at(const MultiPoly& p, const std::vector<std::string>& vars, const std::vector<GaussQ>& point) {
  std::map<std::string, MultiPoly> shift;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (!point[k].is_zero()) shift.emplace(vars[k], MultiPoly::variable(vars[k]) + MultiPoly(point[k]));
  }
  const MultiPoly q = shift.empty() ? p : p.substitute(shift);
  return q.order();
}

bool is_triangular(const std::vector<std::vector<GaussQ>>& m) {
  bool upper = true;
  bool lower = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i > j && !m[i][j].is_zero()) upper = false;
      if (i < j && !m[i][j].is_zero()) lower = false;
    }
  }
  return upper || lower;
}

}  // namespace

BoundaryForm boundary_form(const ChartedSystem& cs) {
  const std::string b = cs.boundary_var();
  if (cs.pole_order != 1) {
    throw NotNormalForm("chart " + cs.chart + " has pole order " + std::to_string(cs.pole_order) + " along " + b);
  }
  const auto& vars = cs.field.statevars();
  BoundaryForm out;
  out.boundary = b;
  out.coords.push_back(b);
  for (const auto& v : vars) {
    if (v != b) out.coords.push_back(v);
  }
  const MultiPoly bp = MultiPoly::variable(b);
  for (const auto& v : out.coords) {
    const std::size_t k = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) - vars.begin());
    const RatExpr& c = cs.field.component(k);
    if (v == b) {
      if (!c.is_polynomial()) throw NotNormalForm("boundary component of chart " + cs.chart + " has a pole");
      out.a.push_back(c.num() * c.den().constant_term().inverse());
    } else {
      const RatExpr scaled = c * RatExpr(bp);
      out.a.push_back(scaled.num() * scaled.den().constant_term().inverse());
    }
  }
  return out;
}

std::string AccessibleCurve::str() const {
  std::ostringstream out;
  out << chart << ": {";
  bool first = true;
  for (const auto& c : coords) {
    auto it = family.values.find(c);
    if (it == family.values.end()) continue;
    out << (first ? "" : ", ") << c << " = " << it->second.str();
    first = false;
  }
  out << "}";
  if (!family.free.empty()) {
    out << " with free";
    for (const auto& f : family.free) out << ' ' << f;
  }
  return out.str();
}

AccessibleLocus find_accessible_singularities(const ChartedSystem& cs) {
  AccessibleLocus locus;
  if (cs.pole_order == 0) return locus;
  const BoundaryForm form = boundary_form(cs);
  const auto& vars = cs.field.statevars();
  const std::vector<std::string> unknowns(form.coords.begin() + 1, form.coords.end());
  std::vector<MultiPoly> restricted;
  for (std::size_t k = 1; k < form.a.size(); ++k) {
    MultiPoly r = form.a[k].evaluate({{form.boundary, GaussQ(0)}});
    for (const auto& v : r.vars()) {
      if (std::find(unknowns.begin(), unknowns.end(), v) == unknowns.end()) {
        throw Error("boundary numerators of chart " + cs.chart + " depend on " + v + "; specialize parameters first");
      }
    }
    restricted.push_back(std::move(r));
  }

  auto to_chart_order = [&](const std::map<std::string, GaussQ>& at) {
    std::vector<GaussQ> p;
    for (const auto& v : vars) p.push_back(v == form.boundary ? GaussQ(0) : at.at(v));
    return p;
  };
  auto make_point = [&](const std::vector<GaussQ>& p) {
    AccessibleSingularity s;
    s.chart = cs.chart;
    s.coords = vars;
    s.point = p;
    unsigned order = ~0U;
    for (const auto& r : restricted) {
      if (!r.is_zero()) order = std::min(order, order_at(r, vars, p));
    }
    s.vanishing_order = order == ~0U ? 0 : order;
    return s;
  };

  const SolveResult sol = solve_system(restricted, unknowns);
  std::vector<AccessibleSingularity> pts;
  for (const auto& f : sol.exact) {
    if (!f.is_point()) {
      locus.curves.push_back({cs.chart, vars, f});
      continue;
    }
    std::map<std::string, GaussQ> at;
    for (const auto& u : unknowns) at[u] = f.values.at(u).constant_value();
    pts.push_back(make_point(to_chart_order(at)));
  }
  for (const auto& n : sol.numeric) {
    AccessibleSingularity s;
    s.chart = cs.chart;
    s.coords = vars;
    s.exact = false;
    std::size_t k = 0;
    for (const auto& v : vars) s.numeric_point.push_back(v == form.boundary ? 0.0 : n.values[k++]);
    locus.points.push_back(s);
  }

  // Distinguished points on curves: the chart origin.
  std::vector<GaussQ> origin(vars.size(), GaussQ(0));
  auto on_curve = [&](const std::vector<GaussQ>& p) {
    std::map<std::string, RatExpr> at;
    for (std::size_t k = 0; k < vars.size(); ++k) at.emplace(vars[k], RatExpr(p[k]));
    for (const auto& c : locus.curves) {
      bool inside = true;
      for (const auto& [v, e] : c.family.values) {
        try {
          const RatExpr val = e.substitute(at);
          const auto idx = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) - vars.begin());
          if (val != RatExpr(p[idx])) inside = false;
        } catch (const DivisionByZeroIdentically&) {
          inside = false;
        }
      }
      if (inside) return true;
    }
    return false;
  };
  if (!locus.curves.empty() && on_curve(origin)) {
    bool present = false;
    for (const auto& p : pts) {
      if (is_origin(p.point)) present = true;
    }
    if (!present) pts.push_back(make_point(origin));
  }
  for (auto& p : pts) p.on_curve = on_curve(p.point);
  std::sort(pts.begin(), pts.end(),
            [](const AccessibleSingularity& a, const AccessibleSingularity& b) { return point_before(a.point, b.point); });
  locus.points.insert(locus.points.begin(), pts.begin(), pts.end());
  return locus;
}

std::vector<AccessibleSingularity> isolated_points(const AccessibleLocus& locus) {
  if (!locus.curves.empty()) {
    throw PositiveDimensionalLocus("accessible locus contains the curve " + locus.curves.front().str());
  }
  return locus.points;
}

std::optional<std::vector<GaussQ>> LocalIndexResult::ratios() const {
  if (!exact || eigenvalues.empty() || eigenvalues[0].is_zero()) return std::nullopt;
  std::vector<GaussQ> out;
  for (const auto& e : eigenvalues) out.push_back(e / eigenvalues[0]);
  return out;
}

std::string LocalIndexResult::str() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t k = 0; k < size(); ++k) {
    if (k) out << ", ";
    if (exact) {
      out << eigenvalues[k].str();
    } else {
      out << numeric_eigenvalues[k];
    }
  }
  out << ')';
  return out.str();
}

LocalIndexResult local_index(const ChartedSystem& cs, const std::vector<GaussQ>& point) {
  const BoundaryForm form = boundary_form(cs);
  const auto& vars = cs.field.statevars();
  if (point.size() != vars.size()) throw std::invalid_argument("local_index: point has wrong dimension");
  std::map<std::string, GaussQ> at;
  for (std::size_t k = 0; k < vars.size(); ++k) at.emplace(vars[k], point[k]);
  if (!at.at(form.boundary).is_zero()) throw std::invalid_argument("local_index: point is not on the boundary");

  std::vector<MultiPoly> F = form.a;
  F[0] *= MultiPoly::variable(form.boundary);
  const std::size_t n = F.size();
  LocalIndexResult r;
  r.linearization.assign(n, std::vector<MultiPoly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && !F[i].evaluate(at).is_zero()) {
      throw std::invalid_argument("local_index: point is not an accessible singularity of " + cs.chart);
    }
    for (std::size_t j = 0; j < n; ++j) {
      r.linearization[i][j] = F[i].derivative(form.coords[j]).evaluate(at);
      if ((i == j || j > 0) && !r.linearization[i][j].is_constant()) {
        throw Error("linearization in chart " + cs.chart + " depends on " + r.linearization[i][j].vars()[0]);
      }
    }
  }

  // The boundary row is (a1(p), 0, ..., 0); the rest comes from the trailing block.
  std::vector<std::vector<GaussQ>> block(n - 1, std::vector<GaussQ>(n - 1));
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) block[i - 1][j - 1] = r.linearization[i][j].constant_term();
  }
  std::vector<GaussQ> tail;
  if (is_triangular(block)) {
    for (std::size_t k = 0; k < block.size(); ++k) tail.push_back(block[k][k]);
  } else {
    std::vector<std::vector<RatExpr>> m(n - 1, std::vector<RatExpr>(n - 1));
    for (std::size_t i = 0; i < n - 1; ++i) {
      for (std::size_t j = 0; j < n - 1; ++j) {
        m[i][j] = RatExpr(-block[i][j]) + (i == j ? RatExpr::variable(kLambda) : RatExpr(0));
      }
    }
    const RatExpr charpoly = determinant(m);
    const auto roots = gaussian_roots(charpoly.num(), kLambda);
    if (!roots.remainder.is_constant()) {
      r.exact = false;
      r.numeric_eigenvalues.push_back(r.linearization[0][0].constant_term().to_complex());
      auto num = numeric_roots(charpoly.num(), kLambda);
      std::sort(num.begin(), num.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
      });
      for (const auto& z : num) r.numeric_eigenvalues.push_back(z);
      return r;
    }
    tail = roots.exact;
    std::sort(tail.begin(), tail.end(), [](const GaussQ& a, const GaussQ& b) { return lex_less(b, a); });
  }
  r.eigenvalues.push_back(r.linearization[0][0].constant_term());
  r.eigenvalues.insert(r.eigenvalues.end(), tail.begin(), tail.end());
  return r;
}

LocalIndexResult local_index(const ChartedSystem& cs, const AccessibleSingularity& p) {
  if (!p.exact) throw std::invalid_argument("local_index needs an exact point");
  return local_index(cs, p.point);
}

LocalIndexResult index_from_eigenvalues(std::vector<GaussQ> eigenvalues) {
  LocalIndexResult r;
  r.eigenvalues = std::move(eigenvalues);
  return r;
}

namespace {

std::optional<long> as_integer(const GaussQ& g) {
  if (!g.is_real() || g.re().get_den() != 1 || !g.re().get_num().fits_slong_p()) return std::nullopt;
  return g.re().get_num().get_si();
}

}  // namespace

Resonances resonances(const LocalIndexResult& r) {
  Resonances out;
  if (!r.exact) {
    out.reason = "index is not exact";
    return out;
  }
  const auto ratios = r.ratios();
  if (!ratios) {
    out.reason = "a1 = 0";
    return out;
  }
  for (std::size_t k = 1; k < ratios->size(); ++k) {
    auto v = as_integer((*ratios)[k]);
    if (!v) {
      out.values.clear();
      out.reason = "ratio " + (*ratios)[k].str() + " is not an integer";
      return out;
    }
    out.values.push_back(*v);
  }
  out.applicable = true;
  return out;
}

IndexClass classify(const LocalIndexResult& r) {
  const Resonances res = resonances(r);
  if (!res.applicable) return IndexClass::VerticalOnly;
  const bool all_positive = std::all_of(res.values.begin(), res.values.end(), [](long v) { return v > 0; });
  return all_positive ? IndexClass::BlowupResolvable : IndexClass::MixedSign;
}

std::string to_string(IndexClass c) {
  switch (c) {
    case IndexClass::VerticalOnly:
      return "vertical_only";
    case IndexClass::BlowupResolvable:
      return "blowup_resolvable";
    case IndexClass::MixedSign:
      return "mixed_sign";
  }
  return "unknown";
}

std::optional<std::vector<GaussQ>> projective_image(const Chart& chart, const std::vector<GaussQ>& point) {
  const auto& target = chart.map.target();
  std::map<std::string, GaussQ> at;
  for (std::size_t k = 0; k < target.size(); ++k) at.emplace(target[k], point[k]);
  std::vector<RatExpr> h{RatExpr(1)};
  for (const auto& e : chart.map.inverse()) h.push_back(e);
  // Clear the boundary pole: multiply by the highest power of the boundary
  // coordinate found in any denominator.
  unsigned k = 0;
  if (!chart.boundary.is_constant()) {
    const std::string b = chart.boundary.vars().at(0);
    for (const auto& e : h) k = std::max(k, e.den().degree(b));
    const RatExpr scale(chart.boundary.pow(k));
    for (auto& e : h) e *= scale;
  }
  std::vector<GaussQ> out;
  for (const auto& e : h) {
    const MultiPoly d = e.den().evaluate(at);
    if (d.is_zero()) return std::nullopt;
    out.push_back(e.num().evaluate(at).constant_term() / d.constant_term());
  }
  auto first = std::find_if(out.begin(), out.end(), [](const GaussQ& g) { return !g.is_zero(); });
  if (first == out.end()) return std::nullopt;
  const GaussQ inv = first->inverse();
  for (auto& g : out) g *= inv;
  return out;
}

SingularityCensus singularity_census(const VField& v, const std::vector<Chart>& charts) {
  SingularityCensus census;
  for (const auto& chart : charts) {
    const ChartedSystem cs = to_chart(v, chart);
    const AccessibleLocus locus = find_accessible_singularities(cs);
    for (const auto& c : locus.curves) census.curves.push_back(c);
    for (const auto& p : locus.points) {
      if (!p.exact) {
        census.numeric.push_back(p);
        continue;
      }
      const auto image = projective_image(chart, p.point);
      if (!image) {
        census.exceptional.push_back(p);
        continue;
      }
      auto it = std::find_if(census.points.begin(), census.points.end(),
                             [&](const CensusEntry& e) { return e.projective == *image; });
      if (it == census.points.end()) {
        census.points.push_back({"", *image, {p}});
      } else {
        it->appearances.push_back(p);
      }
    }
  }
  // Chart origins are labeled first, then the remaining points as found.
  std::stable_partition(census.points.begin(), census.points.end(),
                        [](const CensusEntry& e) { return is_origin(e.appearances.front().point); });
  for (std::size_t k = 0; k < census.points.size(); ++k) census.points[k].label = "P" + std::to_string(k + 1);
  return census;
}

}  // namespace phasekit
