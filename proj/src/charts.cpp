#include "phasekit/charts.hpp"

#include <cctype>

#include "phasekit/errors.hpp"

namespace phasekit {

namespace {

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::vector<Chart> standard_atlas(const std::vector<std::string>& vars) {
  std::vector<Chart> out;
  out.push_back({"U0", RationalMap::identity(vars), MultiPoly(1)});
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const std::string idx = std::to_string(j + 1);
    std::vector<std::string> names;
    for (const auto& v : vars) names.push_back(upper(v) + idx);
    const RatExpr xj = RatExpr::variable(vars[j]);
    const RatExpr tj = RatExpr::variable(names[j]);
    std::vector<RatExpr> fwd;
    std::vector<RatExpr> inv;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (k == j) {
        fwd.push_back(RatExpr(1) / xj);
        inv.push_back(RatExpr(1) / tj);
      } else {
        fwd.push_back(RatExpr::variable(vars[k]) / xj);
        inv.push_back(RatExpr::variable(names[k]) / tj);
      }
    }
    out.push_back({"U" + idx, RationalMap(vars, names, fwd, inv, "U" + idx), MultiPoly::variable(names[j])});
  }
  return out;
}

std::vector<Chart> standard_p3_atlas() { return standard_atlas({"x", "y", "z"}); }

Chart weighted_chart(const std::vector<unsigned>& weights, const std::vector<std::string>& vars, std::size_t axis,
                     std::vector<std::string> names) {
  if (weights.size() != vars.size() || axis >= vars.size()) {
    throw std::invalid_argument("weighted_chart: weights and variables differ in length");
  }
  const unsigned m = weights[axis];
  std::string label = "W(";
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] == 0) throw IncompatibleWeights("weights must be positive");
    if (weights[k] % m != 0) {
      throw IncompatibleWeights("weight " + std::to_string(weights[k]) + " is not a multiple of " + std::to_string(m));
    }
    label += (k ? "," : "") + std::to_string(weights[k]);
  }
  label += ")";
  if (names.empty()) {
    for (const auto& v : vars) names.push_back(upper(v));
  }
  const RatExpr xa = RatExpr::variable(vars[axis]);
  const RatExpr ta = RatExpr::variable(names[axis]);
  std::vector<RatExpr> fwd;
  std::vector<RatExpr> inv;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (k == axis) {
      fwd.push_back(RatExpr(1) / xa);
      inv.push_back(RatExpr(1) / ta);
      continue;
    }
    const int e = static_cast<int>(weights[k] / m);
    fwd.push_back(RatExpr::variable(vars[k]) * xa.pow(-e));
    inv.push_back(RatExpr::variable(names[k]) * ta.pow(-e));
  }
  return {label, RationalMap(vars, names, fwd, inv, label), MultiPoly::variable(names[axis])};
}

ChartedSystem to_chart(const VField& v, const Chart& chart) {
  ChartedSystem cs;
  cs.chart = chart.name;
  cs.field = pushforward(v, chart.map);
  cs.boundary = chart.boundary;
  cs.pole_order = pole_order(cs.field, chart.boundary);
  return cs;
}

RationalMap transition(const Chart& a, const Chart& b) { return a.map.inverted().then(b.map); }

bool overlap_consistent(const std::vector<Chart>& atlas, std::mt19937_64& rng, int samples) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 7);
  auto random_point = [&](std::size_t n) {
    std::vector<GaussQ> p;
    for (std::size_t k = 0; k < n; ++k) p.emplace_back(num(rng), den(rng));
    return p;
  };
  for (std::size_t a = 0; a < atlas.size(); ++a) {
    for (std::size_t b = 0; b < atlas.size(); ++b) {
      if (a == b) continue;
      const RationalMap direct = transition(atlas[a], atlas[b]);
      int done = 0;
      int attempts = 0;
      while (done < samples && attempts < 50 * samples) {
        ++attempts;
        const auto p = random_point(atlas[a].map.target().size());
        try {
          const auto base = atlas[a].map.apply_inverse(p);
          const auto via = atlas[b].map.apply(base);
          if (via != direct.apply(p)) return false;
          ++done;
        } catch (const DivisionByZeroIdentically&) {
          // Point off the overlap.
        }
      }
      if (done < samples) return false;
    }
  }
  return true;
}

}  // namespace phasekit
