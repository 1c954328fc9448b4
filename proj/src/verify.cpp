#include "phasekit/verify.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "phasekit/builtin.hpp"
#include "phasekit/errors.hpp"
#include "phasekit/linalg.hpp"
#include "phasekit/sysdef.hpp"

namespace phasekit {

namespace {

RatExpr E(const std::string& s) { return parse_expression(s); }

std::map<std::string, RatExpr> bind(const std::vector<std::string>& names, const std::vector<RatExpr>& values) {
  std::map<std::string, RatExpr> out;
  for (std::size_t k = 0; k < names.size(); ++k) out.emplace(names[k], values[k]);
  return out;
}

void require_zero(const std::string& what, const RatExpr& residual) {
  if (!residual.is_zero()) throw IdentityFailed(what, residual.str());
}

bool third_order_21(const GaussQ& perturb) {
  const VField v = builtin_system("system21").field();
  const RatExpr x = RatExpr::variable("x");
  const RatExpr x1 = lie_derivative(v, x);
  const RatExpr x2 = lie_derivative(v, x1);
  const RatExpr x3 = lie_derivative(v, x2);
  RatExpr rhs = E("-epsilon/3*x^3 - x^2*xd + 4*epsilon/(3*x)*xd^2 + 1/x*xd*xdd - 4*epsilon/3*xdd");
  rhs += RatExpr(perturb) * E("x^3");
  rhs = rhs.substitute({{"xd", x1}, {"xdd", x2}});
  require_zero("third_order_21", x3 - rhs);
  return true;
}

bool ince_viii_31(const GaussQ& perturb) {
  const VField v = builtin_system("system31").field();
  const auto on_level = bind({"z"}, {E("(x^2 - I)/2")});
  const RatExpr dy = E("(-1/2)*x^3 + (1 + I/2)*x") + RatExpr(perturb) * E("x^3");
  require_zero("ince_viii_31 dx/dt", v.component(0).substitute(on_level) - E("y"));
  require_zero("ince_viii_31 dy/dt", v.component(1).substitute(on_level) - dy);
  // The level set z = (x^2 - I)/2 is invariant.
  const VField reduced("reduced", {"x", "y"}, {E("y"), dy}, {"I"});
  require_zero("ince_viii_31 dz/dt", lie_derivative(reduced, E("(x^2 - I)/2")) - v.component(2).substitute(on_level));
  return true;
}

/// System (4.1) reduced on its first integral, with E = exp(-6t).
VField reduced41(const GaussQ& perturb) {
  return VField("reduced41", {"x", "y"},
                {E("y - 3*x"), E("(-1/2)*x^3 - 3*y + (I*E + 2)/2*x") + RatExpr(perturb) * E("x^3")}, {"I"},
                {ExpSymbol{"E", GaussQ(-6)}});
}

bool reduced_41(const GaussQ& perturb) {
  const VField v = builtin_system("system41").field();
  const auto on_level = bind({"z"}, {E("(x^2 - I*E)/2")});
  const VField r = reduced41(perturb);
  require_zero("reduced_41 dx/dt", v.component(0).substitute(on_level) - r.component(0));
  require_zero("reduced_41 dy/dt", v.component(1).substitute(on_level) - r.component(1));
  require_zero("reduced_41 dz/dt", lie_derivative(r, E("(x^2 - I*E)/2")) - v.component(2).substitute(on_level));
  return true;
}

bool change_of_vars_41(const GaussQ& perturb) {
  const RationalMap m({"x", "y"}, {"X", "Y"}, {E("i/2*x"), E("(2*x + i*x^2 - 2*y)/(2*x)")},
                      {E("-2*i*X"), E("-2*i*X + i/2*(-2*i*X)^2 + 2*i*X*Y")}, "change of variables");
  const VField got = pushforward(reduced41(GaussQ(0)), m);
  const RatExpr dX = E("X^2 - X*Y - 2*X") + RatExpr(perturb) * E("X");
  const RatExpr dY = E("Y^2 - 3*X*Y - 2*Y - I/2*E");
  require_zero("change_of_vars_41 dX/dt", got.component(0) - dX);
  require_zero("change_of_vars_41 dY/dt", got.component(1) - dY);
  return true;
}

}  // namespace

bool verify_first_integral(const VField& v, const RatExpr& f) { return lie_derivative(v, f).is_zero(); }

std::string to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::ThirdOrder21:
      return "third_order_21";
    case ReductionKind::InceVIII31:
      return "ince_viii_31";
    case ReductionKind::Reduced41:
      return "reduced_41";
    case ReductionKind::ChangeOfVars41:
      return "change_of_vars_41";
  }
  return "unknown";
}

ReductionKind reduction_from_string(const std::string& s) {
  for (auto k : {ReductionKind::ThirdOrder21, ReductionKind::InceVIII31, ReductionKind::Reduced41,
                 ReductionKind::ChangeOfVars41}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown reduction: " + s);
}

bool verify_reduction(ReductionKind kind, const GaussQ& perturb) {
  switch (kind) {
    case ReductionKind::ThirdOrder21:
      return third_order_21(perturb);
    case ReductionKind::InceVIII31:
      return ince_viii_31(perturb);
    case ReductionKind::Reduced41:
      return reduced_41(perturb);
    case ReductionKind::ChangeOfVars41:
      return change_of_vars_41(perturb);
  }
  return false;
}

AtlasSpec AtlasSpec::with_params(const std::map<std::string, GaussQ>& values) const {
  AtlasSpec out{name, base.with_params(values), {}, volume_preserving};
  for (const auto& c : charts) out.charts.push_back({c.name, c.map.with_params(values), c.boundary});
  return out;
}

Chart triangular_chart(const std::string& name, const std::vector<std::string>& source,
                       const std::vector<std::string>& target, const std::vector<RatExpr>& forward) {
  const std::string& x = source[0];
  const std::string& y = source[1];
  const std::string& z = source[2];
  const RatExpr xs = RatExpr(1) / RatExpr::variable(target[0]);
  const RatExpr c = RatExpr::variable(z) - forward[2];
  if (c.has_var(y) || c.has_var(z)) throw std::invalid_argument("triangular_chart: z shift must depend on x only");
  const RatExpr zs = RatExpr::variable(target[2]) + c.substitute({{x, xs}});
  const RatExpr a = forward[1].derivative(y);
  const RatExpr b = forward[1] - a * RatExpr::variable(y);
  if (a.has_var(y) || b.has_var(y)) throw std::invalid_argument("triangular_chart: y1 must be affine in y");
  const std::map<std::string, RatExpr> at{{x, xs}, {z, zs}};
  const RatExpr ys = (RatExpr::variable(target[1]) - b.substitute(at)) / a.substitute(at);
  return {name, RationalMap(source, target, forward, {xs, ys, zs}, name), MultiPoly::variable(target[0])};
}

AtlasSpec theorem31_atlas() {
  const std::vector<std::string> s{"x", "y", "z"};
  AtlasSpec a{"theorem31", builtin_system("system21").field(), {}, {true, true}};
  a.charts.push_back(triangular_chart(
      "U1", s, {"x1", "y1", "z1"},
      {E("1/x"), E("-((y - epsilon/3*x - i*z + i*(5*epsilon^2 + 9)/9)*x + 4*epsilon/9*(3*z + epsilon^2 - 3))*x"),
       E("z - 1/6*(3*x - 4*i*epsilon)*x")}));
  a.charts.push_back(triangular_chart(
      "U2", s, {"x2", "y2", "z2"},
      {E("1/x"), E("-((y - epsilon/3*x + i*z - i*(5*epsilon^2 + 9)/9)*x + 4*epsilon/9*(3*z + epsilon^2 - 3))*x"),
       E("z - 1/6*(3*x + 4*i*epsilon)*x")}));
  return a;
}

AtlasSpec theorem41_atlas() {
  const std::vector<std::string> s{"x", "y", "z"};
  AtlasSpec a{"theorem41", builtin_system("m21").field(), {}, {true, true}};
  a.charts.push_back(triangular_chart(
      "U1", s, {"x1", "y1", "z1"},
      {E("1/x"), E("-((y - epsilon/3*x - i*z + alpha1)*x + 4*epsilon/9*(3*z + alpha2))*x"),
       E("z - 1/6*(3*x - alpha3)*x")}));
  a.charts.push_back(triangular_chart(
      "U2", s, {"x2", "y2", "z2"},
      {E("1/x"),
       E("-((y - epsilon/3*x + i*z + 1/36*(36*alpha1 + 24*i*alpha2 + i*alpha3^2 - 48*i*epsilon^2))*x"
         " + 4*epsilon/9*(3*z + 1/3*(3*alpha2 + 2*i*alpha3*epsilon + 8*epsilon^2)))*x"),
       E("z - 1/6*(3*x - alpha3 + 8*i*epsilon)*x")}));
  return a;
}

AtlasSpec prop62_atlas() {
  const SystemDoc doc = builtin_system("xy41");
  AtlasSpec a{"prop62", doc.field(), {}, {}};
  for (const auto& c : doc.charts) {
    const RationalMap m = doc.chart_map(c.name);
    // The boundary coordinate is the one that inverts a state variable.
    std::string b = c.targets[0];
    for (std::size_t k = 0; k < c.targets.size(); ++k) {
      if (c.forward[k].den().is_monomial() && !c.forward[k].den().is_constant() && c.forward[k].num().is_constant()) {
        b = c.targets[k];
        break;
      }
    }
    a.charts.push_back({c.name, m, MultiPoly::variable(b)});
    a.volume_preserving.push_back(false);
  }
  return a;
}

bool AtlasReport::ok() const {
  return std::all_of(charts.begin(), charts.end(), [](const ChartCheck& c) { return c.polynomial && c.volume_ok; });
}

AtlasReport verify_atlas(const AtlasSpec& a) {
  AtlasReport r;
  r.atlas = a.name;
  for (std::size_t k = 0; k < a.charts.size(); ++k) {
    const Chart& c = a.charts[k];
    ChartCheck chk;
    chk.chart = c.name;
    chk.transformed = pushforward(a.base, c.map);
    chk.polynomial = true;
    const auto& tv = c.map.target();
    for (std::size_t j = 0; j < tv.size(); ++j) {
      const auto& den = chk.transformed.component(j).den();
      const bool pole = std::any_of(tv.begin(), tv.end(), [&](const std::string& v) { return den.has_var(v); });
      if (pole) {
        chk.polynomial = false;
        chk.residual_poles.push_back("d" + tv[j] + "/dt = " + chk.transformed.component(j).str());
      }
    }
    chk.jacobian = jacobian_det(c.map);
    chk.volume_claimed = k < a.volume_preserving.size() && a.volume_preserving[k];
    chk.volume_ok = !chk.volume_claimed || chk.jacobian == RatExpr(1);
    r.charts.push_back(std::move(chk));
  }
  return r;
}

namespace {

const std::vector<std::string> kMonomials{"1", "x", "y", "z", "x^2", "x*y", "x*z", "y^2", "y*z", "z^2"};

MultiPoly monomial_in(std::size_t j, const std::vector<std::string>& vars) {
  static const std::vector<std::vector<unsigned>> powers{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0},
                                                         {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
  std::map<std::string, unsigned> p;
  for (std::size_t k = 0; k < 3; ++k) {
    if (powers[j][k]) p[vars[k]] = powers[j][k];
  }
  return MultiPoly::monomial(GaussQ(1), p);
}

using RowKey = std::tuple<std::size_t, std::size_t, std::map<std::string, int>>;

/// Pole coefficients of the transform of basis field `idx` in every chart.
std::vector<std::pair<RowKey, GaussQ>> basis_poles(const AtlasSpec& a, std::size_t idx) {
  std::vector<GaussQ> coeffs(kAnsatzSize);
  coeffs[idx] = GaussQ(1);
  const VField basis = ansatz_field(coeffs, a.base.statevars());
  const VField field("basis", basis.statevars(), basis.components(), a.base.params(), a.base.expsyms());
  std::vector<std::pair<RowKey, GaussQ>> out;
  for (std::size_t c = 0; c < a.charts.size(); ++c) {
    const Chart& ch = a.charts[c];
    if (ch.boundary.is_constant()) continue;
    const std::string b = ch.boundary.vars().at(0);
    const VField t = pushforward(field, ch.map);
    for (std::size_t k = 0; k < t.dimension(); ++k) {
      const RatExpr& comp = t.component(k);
      const MultiPoly& den = comp.den();
      if (!den.is_monomial() || (!den.is_constant() && den.vars() != std::vector<std::string>{b})) {
        throw NotNormalForm("uniqueness_search: chart " + ch.name + " gives denominator " + den.str());
      }
      const int d = static_cast<int>(den.degree(b));
      const GaussQ scale = den.leading_coeff().inverse();
      const auto& nv = comp.num().vars();
      for (const auto& [exp, cf] : comp.num().terms()) {
        std::map<std::string, int> mono;
        int eb = 0;
        for (std::size_t j = 0; j < nv.size(); ++j) {
          if (nv[j] == b) {
            eb = static_cast<int>(exp[j]);
          } else if (exp[j]) {
            mono[nv[j]] = static_cast<int>(exp[j]);
          }
        }
        if (eb >= d) continue;
        mono[b] = eb - d;
        out.emplace_back(RowKey{c, k, mono}, cf * scale);
      }
    }
  }
  return out;
}

UniquenessResult solve_rows(const AtlasSpec& a, const std::vector<std::vector<std::pair<RowKey, GaussQ>>>& per_basis) {
  std::map<RowKey, std::vector<GaussQ>> rows;
  for (std::size_t idx = 0; idx < per_basis.size(); ++idx) {
    for (const auto& [key, cf] : per_basis[idx]) {
      auto& row = rows[key];
      if (row.empty()) row.assign(kAnsatzSize, GaussQ(0));
      row[idx] += cf;
    }
  }
  UniquenessResult r;
  GaussMatrix m(0, kAnsatzSize);
  for (const auto& [key, row] : rows) m.append_row(row);
  r.constraints = rows.size();
  r.rank = m.rank();
  r.nullspace = m.nullspace();
  if (r.nullspace.size() == 1) {
    std::vector<GaussQ> v = r.nullspace[0];
    std::size_t pivot = 2;
    if (v[pivot].is_zero()) {
      pivot = static_cast<std::size_t>(std::find_if(v.begin(), v.end(), [](const GaussQ& g) { return !g.is_zero(); }) -
                                       v.begin());
    }
    const GaussQ s = v[pivot].inverse();
    for (auto& g : v) g *= s;
    r.normalized = ansatz_field(v, a.base.statevars());
  }
  return r;
}

}  // namespace

VField ansatz_field(const std::vector<GaussQ>& coeffs, const std::vector<std::string>& vars) {
  if (coeffs.size() != kAnsatzSize || vars.size() != 3) throw std::invalid_argument("ansatz_field: need 30 coefficients and 3 variables");
  std::vector<RatExpr> comps;
  for (std::size_t k = 0; k < 3; ++k) {
    MultiPoly p;
    for (std::size_t j = 0; j < kMonomials.size(); ++j) {
      if (!coeffs[10 * k + j].is_zero()) p += monomial_in(j, vars) * coeffs[10 * k + j];
    }
    comps.emplace_back(p);
  }
  return VField("ansatz", vars, comps);
}

UniquenessResult uniqueness_search_serial(const AtlasSpec& a) {
  std::vector<std::vector<std::pair<RowKey, GaussQ>>> per(kAnsatzSize);
  for (std::size_t idx = 0; idx < kAnsatzSize; ++idx) per[idx] = basis_poles(a, idx);
  return solve_rows(a, per);
}

UniquenessResult uniqueness_search(const AtlasSpec& a) {
  std::vector<std::vector<std::pair<RowKey, GaussQ>>> per(kAnsatzSize);
  std::vector<std::string> errors(kAnsatzSize);
#pragma omp parallel for schedule(dynamic)
  for (long idx = 0; idx < static_cast<long>(kAnsatzSize); ++idx) {
    try {
      per[static_cast<std::size_t>(idx)] = basis_poles(a, static_cast<std::size_t>(idx));
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(idx)] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw Error(e);
  }
  return solve_rows(a, per);
}

}  // namespace phasekit
