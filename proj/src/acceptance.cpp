#include "phasekit/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "phasekit/builtin.hpp"
#include "phasekit/docgen.hpp"
#include "phasekit/errors.hpp"
#include "phasekit/numeric.hpp"
#include "phasekit/painleve.hpp"
#include "phasekit/resolve.hpp"
#include "phasekit/singular.hpp"
#include "phasekit/verify.hpp"

namespace phasekit {

namespace {

using G = std::vector<GaussQ>;

const GaussQ I = GaussQ::i();

std::string join(const G& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].str();
  return s + ")";
}

std::vector<Chart> lorenz_charts() {
  auto charts = standard_p3_atlas();
  charts.push_back(weighted_chart({1, 2, 2}));
  return charts;
}

// Each check fills `detail` and returns the verdict.
using Check = std::function<bool(std::string&, std::mt19937_64&)>;

bool census(std::string& detail, std::mt19937_64&) {
  const SingularityCensus c = singularity_census(builtin_system("lorenz").field(), lorenz_charts());
  const std::vector<G> expected{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 1, I}, {0, 0, 1, -I}};
  bool ok = c.points.size() == expected.size() && c.numeric.empty();
  for (std::size_t k = 0; ok && k < expected.size(); ++k) ok = c.points[k].projective == expected[k];
  // Boundary coordinates of the two multiplicity-2 points in the weighted chart.
  G weighted;
  int found = 0;
  for (std::size_t k = 3; ok && k < 5; ++k) {
    for (const auto& a : c.points[k].appearances) {
      if (a.chart != "W(1,2,2)") continue;
      ++found;
      const G want{0, (k == 3 ? GaussQ(-1, 2) : GaussQ(1, 2)) * I, GaussQ(1, 2)};
      ok = ok && a.point == want;
    }
  }
  ok = ok && found == 2;
  std::ostringstream d;
  d << c.points.size() << " points";
  for (const auto& p : c.points) d << ", " << p.label << "=" << join(p.projective);
  detail = d.str();
  return ok;
}

bool indices(std::string& detail, std::mt19937_64&) {
  const VField v = builtin_system("lorenz").field();
  const auto charts = lorenz_charts();
  const ChartedSystem w = to_chart(v, charts[4]);
  const LocalIndexResult p1 = local_index(to_chart(v, charts[1]), G{0, 0, 0});
  const LocalIndexResult p2 = local_index(to_chart(v, charts[2]), G{0, 0, 0});
  const LocalIndexResult p3 = local_index(to_chart(v, charts[3]), G{0, 0, 0});
  const LocalIndexResult p4 = local_index(w, G{0, GaussQ(1, 2) * I, GaussQ(1, 2)});
  const LocalIndexResult p5 = local_index(w, G{0, GaussQ(-1, 2) * I, GaussQ(1, 2)});
  bool ok = p1.eigenvalues == G{0, I, -I} && p2.eigenvalues == G{0, 0, 0} && p3.eigenvalues == G{0, 0, 0};
  ok = ok && p4.eigenvalues == G{GaussQ(-1, 2) * I, GaussQ(-2) * I, -I};
  ok = ok && p5.eigenvalues == G{GaussQ(1, 2) * I, GaussQ(2) * I, I};
  const auto ratio = p4.ratios();
  const Resonances res = resonances(p4);
  ok = ok && ratio && *ratio == G{1, 4, 2} && res.applicable && res.values == std::vector<long>{4, 2};
  detail = "P1 " + join(p1.eigenvalues) + ", P2 " + join(p2.eigenvalues) + ", P3 " + join(p3.eigenvalues) +
           ", P4 " + join(p4.eigenvalues) + ", P5 " + join(p5.eigenvalues) +
           (ratio ? ", ratio " + join(*ratio) : std::string(", no ratio"));
  return ok;
}

bool painleve(std::string& detail, std::mt19937_64&) {
  const VField v = builtin_system("lorenz").field();
  const auto bals = dominant_balances(v);
  bool ok = bals.size() == 2;
  std::vector<G> coeffs;
  for (const auto& b : bals) {
    ok = ok && b.exponents == std::vector<unsigned>{1, 2, 2};
    const GaussQ &a = b.coefficients[0], &bb = b.coefficients[1], &c = b.coefficients[2];
    ok = ok && a * a == GaussQ(-4) && bb == -a && c == GaussQ(-2);
    for (const auto& r : balance_residuals(v, b)) ok = ok && r.is_zero();
    coeffs.push_back(b.coefficients);
  }
  std::sort(coeffs.begin(), coeffs.end(), [](const G& x, const G& y) { return x[0].str() < y[0].str(); });
  ok = ok && coeffs.size() == 2 && coeffs[0][0] != coeffs[1][0];
  detail.clear();
  for (const auto& b : bals) detail += (detail.empty() ? "" : "; ") + b.str();
  return ok;
}

bool conditions(std::string& detail, std::mt19937_64&) {
  const auto m = match_conditions(apply_resolution(lorenz_field()));
  bool ok = m.size() == 4;
  detail = "ratios";
  for (const auto& c : m) {
    ok = ok && c.ratio && !c.ratio->is_zero();
    detail += " " + (c.ratio ? c.ratio->str() : std::string("none"));
  }
  return ok;
}

bool parameters(std::string& detail, std::mt19937_64& rng) {
  const auto fams = solve_conditions();
  bool ok = fams.size() == 4 && fams[0].free == std::vector<std::string>{"epsilon"} &&
            fams[0].values.at("sigma") == RatExpr(GaussQ(1, 3)) && fams[0].values.at("b").is_zero();
  std::vector<G> pts;
  for (std::size_t k = 1; ok && k < 4; ++k) {
    ok = fams[k].is_point();
    if (ok) pts.push_back(fams[k].point({"sigma", "epsilon", "b"}));
  }
  ok = ok && pts == std::vector<G>{{1, -3, 2}, {1, 3, 2}, {2, 0, 1}};
  if (!ok) {
    detail = "unexpected families";
    return false;
  }
  const auto conds = resolution_conditions();
  auto direct = [&](const ParameterTriple& t) {
    const std::map<std::string, GaussQ> at{{"sigma", t.sigma}, {"epsilon", t.epsilon}, {"b", t.b}};
    for (const auto& c : conds) {
      if (!c.evaluate(at).is_zero()) return false;
    }
    return true;
  };
  auto pipeline = [&](const ParameterTriple& t) {
    return apply_resolution(lorenz_field(), ResolutionCenter::P4,
                           {{"sigma", t.sigma}, {"epsilon", t.epsilon}, {"b", t.b}})
        .polynomial();
  };
  auto in_family = [&](const ParameterTriple& t) {
    if (t.sigma == GaussQ(1, 3) && t.b.is_zero()) return true;
    for (const auto& p : pts) {
      if (t.sigma == p[0] && t.epsilon == p[1] && t.b == p[2]) return true;
    }
    return false;
  };
  std::uniform_int_distribution<int> num(-30, 30);
  std::uniform_int_distribution<int> den(1, 7);
  std::uniform_int_distribution<int> which(0, 3);
  auto rnd = [&] { return GaussQ(num(rng), den(rng)); };
  int inside = 0, outside = 0, agree = 0;
  for (int k = 0; k < 10; ++k) {
    const int f = which(rng);
    ParameterTriple t{0, 0, 0};
    if (f == 0) {
      GaussQ e = rnd();
      if (e.is_zero()) e = GaussQ(1);
      t = {GaussQ(1, 3), e, 0};
    } else {
      t = {pts[f - 1][0], pts[f - 1][1], pts[f - 1][2]};
    }
    const bool r = check_resolvable(t);
    inside += r;
    agree += r == direct(t) && (t.epsilon.is_zero() || r == pipeline(t));
  }
  for (int k = 0; k < 20;) {
    const ParameterTriple t{rnd(), rnd(), rnd()};
    if (in_family(t)) continue;
    ++k;
    const bool r = check_resolvable(t);
    outside += !r;
    agree += r == direct(t) && (t.epsilon.is_zero() || r == pipeline(t));
  }
  detail = std::to_string(inside) + "/10 family points resolvable, " + std::to_string(outside) +
           "/20 outside points not, " + std::to_string(agree) + "/30 agree with direct and specialized checks";
  return inside == 10 && outside == 20 && agree == 30;
}

bool integrals(std::string& detail, std::mt19937_64&) {
  bool ok = true;
  detail.clear();
  for (const char* n : {"system31", "system41", "system51"}) {
    const SystemDoc d = builtin_system(n);
    const RatExpr lie = lie_derivative(d.field(), d.integrals[0].expr);
    ok = ok && lie.is_zero();
    detail += std::string(n) + " " + lie.str() + ", ";
  }
  const VField control =
      builtin_system("lorenz").field().with_params({{"sigma", 10}, {"epsilon", 1}, {"b", GaussQ(8, 3)}});
  const RatExpr lie = lie_derivative(control, parse_expression("x^2 - 2*z"));
  ok = ok && !lie.is_zero();
  detail += "control " + lie.str();
  return ok;
}

bool reductions(std::string& detail, std::mt19937_64&) {
  bool ok = true;
  detail.clear();
  for (auto k : {ReductionKind::ThirdOrder21, ReductionKind::InceVIII31, ReductionKind::Reduced41,
                 ReductionKind::ChangeOfVars41}) {
    bool pass = false;
    try {
      pass = verify_reduction(k);
    } catch (const IdentityFailed& e) {
      detail += (detail.empty() ? "" : ", ") + to_string(k) + " residual " + e.residual();
    }
    ok = ok && pass;
    if (pass) detail += (detail.empty() ? "" : ", ") + to_string(k) + " ok";
  }
  return ok;
}

bool atlases(std::string& detail, std::mt19937_64& rng) {
  const AtlasReport t31 = verify_atlas(theorem31_atlas());
  bool ok = t31.ok();
  for (const auto& c : t31.charts) ok = ok && c.polynomial && c.jacobian == RatExpr(1);
  std::uniform_int_distribution<int> d(-9, 9);
  int t41 = 0;
  for (int k = 0; k < 3; ++k) {
    const std::map<std::string, GaussQ> vals{{"alpha1", GaussQ(d(rng), 2)},
                                             {"alpha2", GaussQ(d(rng), 3)},
                                             {"alpha3", GaussQ(d(rng)) + I * GaussQ(d(rng))},
                                             {"epsilon", GaussQ(d(rng) | 1, 5)}};
    const AtlasReport r = verify_atlas(theorem41_atlas().with_params(vals));
    bool pass = r.ok();
    for (const auto& c : r.charts) pass = pass && c.polynomial && c.jacobian == RatExpr(1);
    t41 += pass;
  }
  const AtlasReport p62 = verify_atlas(prop62_atlas());
  bool p62ok = p62.ok();
  for (const auto& c : p62.charts) p62ok = p62ok && c.polynomial;
  detail = std::string("theorem31 ") + (ok ? "ok" : "fail") + ", theorem41 " + std::to_string(t41) +
           "/3 tuples, prop62 " + std::to_string(p62.charts.size() + 1) + " charts " + (p62ok ? "ok" : "fail");
  return ok && t41 == 3 && p62ok;
}

bool uniqueness(std::string& detail, std::mt19937_64& rng) {
  bool ok = true;
  detail.clear();
  for (long e : {1L, 3L, -2L}) {
    const auto u = uniqueness_search(theorem31_atlas().with_params({{"epsilon", e}}));
    const bool pass = u.nullspace.size() == 1 && u.normalized &&
                      *u.normalized == builtin_system("system21").field().with_params({{"epsilon", e}});
    ok = ok && pass;
    detail += "eps=" + std::to_string(e) + (pass ? " ok" : " fail") + ", ";
  }
  std::uniform_int_distribution<int> d(1, 9);
  const std::map<std::string, GaussQ> vals{{"alpha1", GaussQ(d(rng), 2)},
                                           {"alpha2", GaussQ(d(rng))},
                                           {"alpha3", GaussQ(d(rng), 3)},
                                           {"epsilon", GaussQ(d(rng))}};
  const auto u = uniqueness_search(theorem41_atlas().with_params(vals));
  const bool pass =
      u.nullspace.size() == 1 && u.normalized && *u.normalized == builtin_system("m21").field().with_params(vals);
  detail += std::string("m21 at alpha=(") + vals.at("alpha1").str() + ", " + vals.at("alpha2").str() + ", " +
            vals.at("alpha3").str() + "), eps=" + vals.at("epsilon").str() + (pass ? " ok" : " fail");
  return ok && pass;
}

bool numerics(std::string& detail, std::mt19937_64&) {
  std::ostringstream d;
  d.precision(3);
  const SystemDoc s31 = builtin_system("system31");
  const double drift31 = drift_check(integrate(s31.field(), {1, 0, 0}, 0, 10, 1e-3), s31.field(), s31.integrals[0].expr);
  bool ok = drift31 <= 1e-8;
  d << "drift 3.1 " << drift31;
  for (const char* n : {"system41", "system51"}) {
    const SystemDoc s = builtin_system(n);
    const double drift = drift_check(integrate(s.field(), {1, 0, 0}, 0, 2, 1e-4), s.field(), s.integrals[0].expr);
    ok = ok && drift <= 1e-7;
    d << ", " << n << " " << drift;
  }
  const ConvergenceReport c = convergence_study(s31.field(), {1, 0, 0}, 2.0, {0.1, 0.05, 0.025, 0.0125});
  ok = ok && std::abs(c.mean_order - 4.0) <= 0.3;
  d << ", order " << c.mean_order;

  const VField lz = lorenz_field().with_params({{"sigma", 10}, {"epsilon", 1}, {"b", GaussQ(8, 3)}});
  const auto bals = dominant_balances(lorenz_field());
  const double tau = -1e-2;
  CState x0;
  for (std::size_t k = 0; k < 3; ++k) {
    x0.push_back(bals.at(0).coefficients[k].to_complex() / std::pow(tau, bals[0].exponents[k]));
  }
  const BlowUpFit f = blowup_exponent(lz, x0, 1e-7);
  ok = ok && std::abs(f.slope + 1.0) <= 0.05;
  d << ", blow-up slope " << f.slope;
  detail = d.str();
  return ok;
}

bool parser(std::string& detail, std::mt19937_64& rng) {
  int stable = 0;
  const int total = 500;
  for (int n = 0; n < total; ++n) {
    const SystemDoc doc = parse_system(random_document_text(rng, n));
    const std::string printed = print_system(doc);
    const SystemDoc again = parse_system(printed);
    stable += again == doc && print_system(again) == printed;
  }
  // The Lorenz field assembled term by term.
  auto v = [](const char* s) { return MultiPoly::variable(s); };
  const MultiPoly x = v("x"), y = v("y"), z = v("z"), sigma = v("sigma"), eps = v("epsilon"), b = v("b");
  const VField l1("lorenz", {"x", "y", "z"},
                  {RatExpr(y - sigma * eps * x), RatExpr(-x * z + x - eps * y), RatExpr(x * y - eps * b * z)},
                  {"sigma", "epsilon", "b"});
  const bool lorenz = builtin_system("lorenz").field() == l1;
  detail = std::to_string(stable) + "/" + std::to_string(total) + " documents stable, lorenz " +
           (lorenz ? "exact" : "differs");
  return stable == total && lorenz;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  const std::vector<std::pair<std::string, Check>> checks{
      {"singularity census", census},    {"local indices", indices},        {"dominant balances", painleve},
      {"resolution conditions", conditions}, {"parameter families", parameters}, {"first integrals", integrals},
      {"reductions", reductions},        {"atlases", atlases},              {"uniqueness", uniqueness},
      {"numeric cross-checks", numerics}, {"parser", parser},
  };
  std::vector<CriterionResult> out;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    std::mt19937_64 rng(seed + k);
    CriterionResult r{static_cast<int>(k + 1), checks[k].first, false, ""};
    try {
      r.pass = checks[k].second(r.detail, rng);
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace phasekit
