#include <random>

#include "doctest.h"
#include "phasekit/charts.hpp"
#include "phasekit/errors.hpp"
#include "phasekit/sysdef.hpp"
#include "test_util.hpp"

using namespace phasekit;

TEST_CASE("pushforward") {
  const VField lorenz = load_system("lorenz.sys").field();
  CHECK(pushforward(lorenz, RationalMap::identity({"x", "y", "z"})) == lorenz);

  const Chart u1 = standard_p3_atlas()[1];
  const VField f1 = pushforward(lorenz, u1.map);
  CHECK(f1.statevars() == std::vector<std::string>{"X1", "Y1", "Z1"});
  CHECK(!f1.is_polynomial());
  for (const auto& c : f1.components()) CHECK((c.den().is_constant() || c.den() == R("X1")));

  // Weighted chart, worked out by hand.
  const VField w = pushforward(lorenz, weighted_chart({1, 2, 2}).map);
  CHECK(w.component(0) == R("epsilon*sigma*X - Y"));
  CHECK(w.component(1) == R("(X^2 + 2*epsilon*sigma*X*Y - epsilon*X*Y - 2*Y^2 - Z)/X"));
  CHECK(w.component(2) == R("-(epsilon*b*X*Z - 2*epsilon*sigma*X*Z + 2*Y*Z - Y)/X"));
}

TEST_CASE("lie derivative and divergence") {
  const VField s31 = load_system("system31.sys").field();
  CHECK(lie_derivative(s31, R("x^2 - 2*z")).is_zero());
  CHECK(!lie_derivative(s31, R("x^2 + 2*z")).is_zero());
  const SystemDoc d41 = load_system("system41.sys");
  CHECK(lie_derivative(d41.field(), d41.integrals[0].expr).is_zero());

  const VField lorenz = load_system("lorenz.sys").field();
  CHECK(divergence(lorenz) == R("-epsilon*(sigma + 1 + b)"));
  CHECK(divergence(s31).is_zero());
  const VField zero("zero", {"x"}, {RatExpr()});
  CHECK(divergence(zero).is_zero());
  const VField control = lorenz.with_params({{"sigma", GaussQ(10)}, {"epsilon", GaussQ(1)}, {"b", GaussQ(8, 3)}});
  CHECK(!lie_derivative(control, R("x^2 - 2*z")).is_zero());
}

TEST_CASE("jacobian determinants") {
  const auto atlas = standard_p3_atlas();
  CHECK(jacobian_det(atlas[0].map) == RatExpr(1));
  CHECK(jacobian_det(atlas[1].map) == R("-1/x^4"));
  for (const auto& c : atlas) {
    const RationalMap round = c.map.then(c.map.inverted());
    CHECK(jacobian_det(round) == RatExpr(1));
  }
  const SystemDoc xy = load_system("xy41.sys");
  CHECK(jacobian_det(xy.chart_map("C3")) == R("-1/y"));
}

TEST_CASE("rational maps check their inverse") {
  CHECK_THROWS_AS(RationalMap({"x"}, {"X"}, {R("1/x")}, {R("X")}), std::invalid_argument);
  CHECK_NOTHROW(RationalMap({"x"}, {"X"}, {R("1/x")}, {R("1/X")}));
}

TEST_CASE("standard atlas") {
  const auto atlas = standard_p3_atlas();
  REQUIRE(atlas.size() == 4);
  CHECK(atlas[1].map.apply({GaussQ(2), GaussQ(4), GaussQ(6)}) ==
        std::vector<GaussQ>{GaussQ(1, 2), GaussQ(2), GaussQ(3)});
  CHECK(atlas[2].map.forward() == std::vector<RatExpr>{R("x/y"), R("1/y"), R("z/y")});
  CHECK(atlas[1].boundary == P("X1"));
  CHECK(atlas[2].boundary == P("Y2"));
  CHECK(atlas[3].boundary == P("Z3"));
  std::mt19937_64 rng(3);
  CHECK(overlap_consistent(atlas, rng));
  // U1 -> U2 directly.
  const RationalMap t12 = transition(atlas[1], atlas[2]);
  CHECK(t12.forward() == std::vector<RatExpr>{R("1/Y1"), R("X1/Y1"), R("Z1/Y1")});
}

TEST_CASE("weighted charts") {
  const Chart w = weighted_chart({1, 2, 2});
  CHECK(w.map.forward() == std::vector<RatExpr>{R("1/x"), R("y/x^2"), R("z/x^2")});
  const Chart w111 = weighted_chart({1, 1, 1}, {"x", "y", "z"}, 0, {"X1", "Y1", "Z1"});
  CHECK(w111.map.forward() == standard_p3_atlas()[1].map.forward());
  CHECK(w111.map.inverse() == standard_p3_atlas()[1].map.inverse());
  CHECK_THROWS_AS(weighted_chart({2, 1, 1}), IncompatibleWeights);
  const Chart wy = weighted_chart({2, 1, 2}, {"x", "y", "z"}, 1);
  CHECK(wy.map.forward() == std::vector<RatExpr>{R("x/y^2"), R("1/y"), R("z/y^2")});
}

TEST_CASE("to_chart") {
  const VField lorenz = load_system("lorenz.sys").field();
  const ChartedSystem u1 = to_chart(lorenz, standard_p3_atlas()[1]);
  CHECK(u1.pole_order >= 1);
  CHECK(u1.boundary_var() == "X1");

  const ChartedSystem w = to_chart(lorenz, weighted_chart({1, 2, 2}));
  CHECK(w.pole_order == 1);
  // Boundary numerators vanish at (0, +-i/2, 1/2).
  for (const GaussQ& y : {GaussQ::i() / GaussQ(2), -GaussQ::i() / GaussQ(2)}) {
    const std::map<std::string, GaussQ> at{{"X", GaussQ(0)}, {"Y", y}, {"Z", GaussQ(1, 2)}};
    CHECK(w.field.component(1).num().evaluate(at).is_zero());
    CHECK(w.field.component(2).num().evaluate(at).is_zero());
  }

  const VField constant("c", {"x", "y", "z"}, {RatExpr(1), RatExpr(0), RatExpr(0)});
  const ChartedSystem c1 = to_chart(constant, standard_p3_atlas()[1]);
  CHECK(c1.field.component(0) == R("-X1^2"));
  CHECK(c1.field.component(1) == R("-X1*Y1"));
}

TEST_CASE("weighted (1,1,1) chart agrees with U1 on random cubic fields") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3);
  const std::vector<std::string> vars{"x", "y", "z"};
  const Chart w = weighted_chart({1, 1, 1}, vars, 0, {"X1", "Y1", "Z1"});
  const Chart u1 = standard_p3_atlas()[1];
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<RatExpr> comps;
    for (int k = 0; k < 3; ++k) {
      MultiPoly p;
      for (unsigned a = 0; a <= 3; ++a) {
        for (unsigned b = 0; a + b <= 3; ++b) {
          for (unsigned c = 0; a + b + c <= 3; ++c) {
            if (coef(rng) > 1) p += MultiPoly::monomial(GaussQ(coef(rng)), {{"x", a}, {"y", b}, {"z", c}});
          }
        }
      }
      comps.emplace_back(p);
    }
    const VField f("random", vars, comps);
    const ChartedSystem a = to_chart(f, w);
    const ChartedSystem b = to_chart(f, u1);
    REQUIRE(a.field == b.field);
    // boundary^pole_order clears every denominator.
    for (const auto& c : a.field.components()) {
      REQUIRE((c * RatExpr(a.boundary.pow(a.pole_order))).is_polynomial());
    }
  }
}
