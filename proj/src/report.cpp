#include "phasekit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "phasekit/builtin.hpp"

namespace phasekit::report {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
  }
  return out;
}

json strings(const std::vector<std::string>& v) { return json(v); }

bool same_field(const VField& a, const VField& b) {
  return a.statevars() == b.statevars() && a.components() == b.components();
}

json index_json(const LocalIndexResult& r) {
  json j;
  j["exact"] = r.exact;
  j["eigenvalues"] = r.exact ? exact_vector(r.eigenvalues) : numeric_vector(r.numeric_eigenvalues);
  const auto ratios = r.ratios();
  j["ratios"] = ratios ? exact_vector(*ratios) : json(nullptr);
  const Resonances res = resonances(r);
  if (res.applicable) {
    j["resonances"] = res.values;
  } else {
    j["resonances"] = nullptr;
    j["resonance_note"] = res.reason;
  }
  j["class"] = to_string(classify(r));
  return j;
}

json appearance_json(const AccessibleSingularity& p, const std::map<std::string, ChartedSystem>& systems) {
  json j;
  j["chart"] = p.chart;
  j["coords"] = p.coords;
  if (p.exact) {
    j["point"] = exact_vector(p.point);
    j["vanishing_order"] = p.vanishing_order;
    j["on_curve"] = p.on_curve;
    try {
      j["index"] = index_json(local_index(systems.at(p.chart), p));
    } catch (const std::exception& e) {
      j["index"] = nullptr;
      j["index_error"] = e.what();
    }
  } else {
    j["point"] = numeric_vector(p.numeric_point);
  }
  return j;
}

std::string family_value(const SolutionFamily& f, const std::string& v) {
  auto it = f.values.find(v);
  return it == f.values.end() ? v : it->second.str();
}

std::vector<std::string> lorenz_discrepancies() {
  return {
      "the weighted point (0, i/2, 1/2) projects to Z2 = -i; the index tables label it P4 while the point list "
      "labels Z2 = i as P4; indices here are attached to coordinates",
      "the Step 5 center repeats q4 on its right-hand side; the substitution uses r4 as in the displayed map",
      "the balance coefficients are printed with the exponent letters n, p; they are b = -a and c = -2",
      "the polynomiality conditions hold only up to the factors listed as ratios; at epsilon = 0 every pole part "
      "vanishes although the second and third conditions need not",
  };
}

}  // namespace

json exact(const GaussQ& g) { return {{"exact", true}, {"value", g.str()}}; }

json numeric(const cplx& z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.15g%+.15g*i", z.real(), z.imag());
  return {{"exact", false}, {"value", std::string(buf)}};
}

json exact_vector(const std::vector<GaussQ>& v) {
  json a = json::array();
  for (const auto& g : v) a.push_back(exact(g));
  return a;
}

json numeric_vector(const std::vector<cplx>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(numeric(z));
  return a;
}

json envelope(const std::string& command, const std::string& system, std::uint64_t seed) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"system", system}, {"seed", seed}};
}

std::map<std::string, GaussQ> parse_params(const std::string& text) {
  std::map<std::string, GaussQ> out;
  if (text.empty()) return out;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--params expects name=value, got '" + item + "'");
    out[split(item.substr(0, eq), ' ')[0]] = parse_gauss(item.substr(eq + 1));
  }
  return out;
}

std::vector<GaussQ> parse_point(const std::string& text) {
  std::vector<GaussQ> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_gauss(s));
  return out;
}

std::vector<cplx> parse_numeric_point(const std::string& text) {
  std::vector<cplx> out;
  for (const auto& s : split(text, ',')) {
    try {
      out.push_back(parse_gauss(s).to_complex());
    } catch (const std::exception&) {
      out.emplace_back(std::stod(s), 0.0);
    }
  }
  return out;
}

Chart chart_by_name(const std::string& name, const std::vector<std::string>& vars) {
  if (name.size() > 1 && name[0] == 'U') {
    const auto atlas = standard_atlas(vars);
    const std::size_t k = std::stoul(name.substr(1));
    if (k >= atlas.size()) throw std::invalid_argument("no chart " + name);
    return atlas[k];
  }
  if (name.size() > 3 && name[0] == 'W' && name[1] == '(' && name.back() == ')') {
    std::vector<unsigned> w;
    for (const auto& s : split(name.substr(2, name.size() - 3), ',')) w.push_back(static_cast<unsigned>(std::stoul(s)));
    return weighted_chart(w, vars);
  }
  throw std::invalid_argument("unknown chart " + name + " (use U0..Un or W(w1,...))");
}

std::vector<Chart> charts_for(const VField& v, const std::string& which, std::vector<std::string>& notes) {
  if (which != "standard" && which != "weighted" && which != "all") {
    throw std::invalid_argument("--charts must be standard, weighted or all");
  }
  std::vector<Chart> out;
  if (which != "weighted") {
    const auto atlas = standard_atlas(v.statevars());
    out.insert(out.end(), atlas.begin() + 1, atlas.end());
  }
  if (which != "standard" && v.is_polynomial()) {
    std::set<std::vector<unsigned>> seen;
    for (const auto& b : dominant_balances(v)) {
      if (!seen.insert(b.exponents).second) continue;
      if (std::all_of(b.exponents.begin(), b.exponents.end(), [&](unsigned e) { return e == b.exponents[0]; })) {
        continue;
      }
      try {
        out.push_back(balance_to_chart(b, v.statevars()));
      } catch (const IncompatibleWeights& e) {
        notes.push_back(std::string("no weighted chart for balance ") + b.str() + ": " + e.what());
      }
    }
  }
  return out;
}

json singularities_section(const VField& v, const std::vector<Chart>& charts, std::vector<std::string>& notes) {
  std::vector<Chart> usable;
  std::map<std::string, ChartedSystem> systems;
  for (const auto& c : charts) {
    try {
      const ChartedSystem cs = to_chart(v, c);
      find_accessible_singularities(cs);
      systems.emplace(c.name, cs);
      usable.push_back(c);
    } catch (const std::exception& e) {
      notes.push_back("chart " + c.name + " skipped: " + e.what());
    }
  }
  const SingularityCensus census = singularity_census(v, usable);
  json j;
  json charts_json = json::array();
  for (const auto& c : usable) charts_json.push_back(c.name);
  j["charts"] = charts_json;
  j["count"] = census.points.size();
  j["points"] = json::array();
  for (const auto& e : census.points) {
    json p;
    p["label"] = e.label;
    p["projective"] = exact_vector(e.projective);
    p["appearances"] = json::array();
    for (const auto& a : e.appearances) p["appearances"].push_back(appearance_json(a, systems));
    j["points"].push_back(p);
  }
  j["exceptional"] = json::array();
  for (const auto& a : census.exceptional) j["exceptional"].push_back(appearance_json(a, systems));
  j["curves"] = json::array();
  for (const auto& c : census.curves) j["curves"].push_back({{"chart", c.chart}, {"description", c.str()}});
  j["numeric"] = json::array();
  for (const auto& a : census.numeric) j["numeric"].push_back(appearance_json(a, systems));
  return j;
}

json index_section(const ChartedSystem& cs, const std::vector<GaussQ>& point) {
  json j = index_json(local_index(cs, point));
  j["chart"] = cs.chart;
  j["coords"] = cs.field.statevars();
  j["point"] = exact_vector(point);
  return j;
}

json balances_section(const std::vector<Balance>& bals) {
  json a = json::array();
  for (const auto& b : bals) {
    a.push_back({{"branch", b.branch}, {"exponents", b.exponents}, {"coefficients", exact_vector(b.coefficients)}});
  }
  return a;
}

json resolution_section(const std::map<std::string, GaussQ>& values, std::vector<std::string>& failures) {
  json j;
  j["steps"] = json::array();
  for (const auto& s : resolution_sequence_p4()) j["steps"].push_back({{"label", s.label}, {"center", s.center}});
  const ResolutionResult sym = apply_resolution(lorenz_field());
  j["conditions"] = json::array();
  for (const auto& m : match_conditions(sym)) {
    j["conditions"].push_back({{"component", m.component},
                               {"power", m.power},
                               {"monomial", m.monomial},
                               {"coefficient", m.coeff.str()},
                               {"condition", m.condition.str()},
                               {"ratio", m.ratio ? json(m.ratio->str()) : json(nullptr)}});
    if (!m.ratio) failures.push_back("pole coefficient of d" + m.component + "/dt is not a multiple of its condition");
  }
  j["families"] = json::array();
  for (const auto& f : solve_conditions()) {
    j["families"].push_back({{"sigma", family_value(f, "sigma")},
                             {"epsilon", family_value(f, "epsilon")},
                             {"b", family_value(f, "b")},
                             {"free", f.free}});
  }
  const bool bound = values.count("sigma") && values.count("epsilon") && values.count("b");
  if (bound) {
    const ParameterTriple t{values.at("sigma"), values.at("epsilon"), values.at("b")};
    const bool resolvable = check_resolvable(t);
    const bool poly = apply_resolution(lorenz_field(), ResolutionCenter::P4, values).polynomial();
    j["resolvable"] = resolvable;
    j["pipeline_polynomial"] = poly;
    if (resolvable != poly && !t.epsilon.is_zero()) {
      failures.push_back("conditions and specialized resolution disagree");
    }
  } else {
    j["resolvable"] = nullptr;
  }
  return j;
}

json integrals_section(const SystemDoc& doc, const std::map<std::string, GaussQ>& values,
                       std::vector<std::string>& failures) {
  json a = json::array();
  const VField v = doc.field().with_params(values);
  for (const auto& in : doc.integrals) {
    const RatExpr f = values.empty() ? in.expr : in.expr.substitute([&] {
      std::map<std::string, RatExpr> b;
      for (const auto& [k, g] : values) b.emplace(k, RatExpr(g));
      return b;
    }());
    const RatExpr lie = lie_derivative(v, f);
    a.push_back({{"name", in.name}, {"expr", f.str()}, {"conserved", lie.is_zero()}, {"lie_derivative", lie.str()}});
    if (!lie.is_zero()) failures.push_back("integral " + in.name + " is not conserved");
  }
  return a;
}

json reductions_section(std::vector<std::string>& failures) {
  json a = json::array();
  for (auto k : {ReductionKind::ThirdOrder21, ReductionKind::InceVIII31, ReductionKind::Reduced41,
                 ReductionKind::ChangeOfVars41}) {
    try {
      verify_reduction(k);
      a.push_back({{"kind", to_string(k)}, {"identity", true}});
    } catch (const IdentityFailed& e) {
      a.push_back({{"kind", to_string(k)}, {"identity", false}, {"residual", e.residual()}});
      failures.push_back("reduction " + to_string(k) + " failed");
    }
  }
  return a;
}

json atlas_section(const AtlasReport& r, std::vector<std::string>& failures) {
  json j;
  j["atlas"] = r.atlas;
  j["ok"] = r.ok();
  j["charts"] = json::array();
  for (const auto& c : r.charts) {
    j["charts"].push_back({{"chart", c.chart},
                           {"polynomial", c.polynomial},
                           {"jacobian", c.jacobian.str()},
                           {"volume_claimed", c.volume_claimed},
                           {"volume_ok", c.volume_ok},
                           {"residual_poles", c.residual_poles}});
  }
  if (!r.ok()) failures.push_back("atlas " + r.atlas + " failed");
  return j;
}

json uniqueness_section(const UniquenessResult& r, const VField& expected, std::vector<std::string>& failures) {
  json j;
  j["unknowns"] = r.unknowns;
  j["constraints"] = r.constraints;
  j["rank"] = r.rank;
  j["nullity"] = r.nullspace.size();
  if (r.normalized) {
    std::vector<std::string> comps;
    for (const auto& c : r.normalized->components()) comps.push_back(c.str());
    j["normalized"] = comps;
  } else {
    j["normalized"] = nullptr;
  }
  const bool match = r.normalized && same_field(*r.normalized, expected);
  j["matches_expected"] = match;
  if (!match) failures.push_back("uniqueness search did not return the expected system");
  return j;
}

json trajectory_section(const SystemDoc& doc, const VField& v, const Trajectory& tr) {
  json j;
  j["samples"] = tr.times.size();
  j["step"] = tr.step;
  j["t_end"] = tr.times.back();
  j["blow_up"] = tr.blow_up;
  j["final_state"] = numeric_vector(tr.states.back());
  j["drifts"] = json::array();
  for (const auto& in : doc.integrals) {
    try {
      j["drifts"].push_back({{"name", in.name}, {"max_drift", drift_check(tr, v, in.expr)}});
    } catch (const std::exception& e) {
      j["drifts"].push_back({{"name", in.name}, {"max_drift", nullptr}, {"error", e.what()}});
    }
  }
  return j;
}

AtlasSpec atlas_by_name(const std::string& name) {
  if (name == "theorem31") return theorem31_atlas();
  if (name == "theorem41") return theorem41_atlas();
  if (name == "prop62") return prop62_atlas();
  throw std::invalid_argument("unknown atlas " + name + " (theorem31, theorem41, prop62)");
}

json analyze(const SystemDoc& doc, const AnalyzeOptions& opt) {
  for (const auto& [k, g] : opt.params) {
    if (std::find(doc.params.begin(), doc.params.end(), k) == doc.params.end()) {
      throw std::invalid_argument("unknown parameter " + k);
    }
  }
  std::vector<std::string> notes;
  std::vector<std::string> failures;
  const VField base = doc.field();
  const VField v = base.with_params(opt.params);
  json out = envelope("analyze", doc.name, opt.seed);
  json params = json::object();
  for (const auto& [k, g] : opt.params) params[k] = exact(g);
  out["params"] = params;

  std::vector<Balance> bals;
  if (v.is_polynomial()) bals = dominant_balances(v);
  out["balances"] = balances_section(bals);
  out["singularities"] = singularities_section(v, charts_for(v, opt.charts, notes), notes);

  const bool lorenz = same_field(base, lorenz_field());
  if (lorenz) {
    out["resolution"] = resolution_section(opt.params, failures);
    out["discrepancies"] = strings(lorenz_discrepancies());
  }
  if (!doc.integrals.empty()) out["integrals"] = integrals_section(doc, opt.params, failures);

  for (const auto& [sys, atlas] : std::vector<std::pair<std::string, std::string>>{
           {"system21", "theorem31"}, {"m21", "theorem41"}, {"xy41", "prop62"}}) {
    if (same_field(base, builtin_system(sys).field())) {
      out["atlas"] = atlas_section(verify_atlas(atlas_by_name(atlas).with_params(opt.params)), failures);
    }
  }

  if (opt.skip_numeric) {
    notes.push_back("numeric checks skipped on request");
  } else if (!v.params().empty()) {
    notes.push_back("numeric checks skipped: unbound parameters");
  } else {
    try {
      const Trajectory tr = integrate(v, CState(v.dimension(), cplx(0.5)), 0.0, 1.0, 1e-3, 100);
      json num;
      num["trajectory"] = trajectory_section(doc, v, tr);
      if (!bals.empty()) {
        const double tau = -1e-2;
        CState x0;
        for (std::size_t k = 0; k < v.dimension(); ++k) {
          x0.push_back(bals[0].coefficients[k].to_complex() / std::pow(tau, bals[0].exponents[k]));
        }
        try {
          const BlowUpFit f = blowup_exponent(v, x0, 1e-7);
          num["blowup"] = {{"component", v.statevars()[0]},
                           {"slope", f.slope},
                           {"expected", -static_cast<double>(bals[0].exponents[0])},
                           {"samples", f.samples}};
        } catch (const std::exception& e) {
          notes.push_back(std::string("blow-up fit skipped: ") + e.what());
        }
      }
      out["numeric"] = num;
    } catch (const std::exception& e) {
      notes.push_back(std::string("numeric checks failed: ") + e.what());
      failures.push_back("numeric integration failed");
    }
  }
  out["notes"] = strings(notes);
  out["failures"] = strings(failures);
  return out;
}

}  // namespace phasekit::report
