#include "doctest.h"
#include "phasekit/errors.hpp"
#include "phasekit/singular.hpp"
#include "test_util.hpp"

using namespace phasekit;

namespace {

const GaussQ I = GaussQ::i();

std::vector<GaussQ> G(std::initializer_list<GaussQ> v) { return v; }

std::vector<Chart> lorenz_charts() {
  auto charts = standard_p3_atlas();
  charts.push_back(weighted_chart({1, 2, 2}));
  return charts;
}

}  // namespace

TEST_CASE("boundary form of the weighted chart") {
  const VField lorenz = load_system("lorenz.sys").field();
  const ChartedSystem cs = to_chart(lorenz, weighted_chart({1, 2, 2}));
  const BoundaryForm f = boundary_form(cs);
  CHECK(f.boundary == "X");
  CHECK(f.coords == std::vector<std::string>{"X", "Y", "Z"});
  CHECK(f.a[0] == P("epsilon*sigma*X - Y"));
  CHECK(f.a[1] == P("X^2 + 2*epsilon*sigma*X*Y - epsilon*X*Y - 2*Y^2 - Z"));

  const ChartedSystem flat = to_chart(lorenz, standard_p3_atlas()[0]);
  CHECK_THROWS_AS(boundary_form(flat), NotNormalForm);
}

TEST_CASE("accessible singularities of the weighted chart") {
  const VField lorenz = load_system("lorenz.sys").field();
  const ChartedSystem cs = to_chart(lorenz, weighted_chart({1, 2, 2}));
  const AccessibleLocus locus = find_accessible_singularities(cs);
  CHECK(locus.curves.empty());
  const auto pts = isolated_points(locus);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].point == G({0, 0, 0}));
  CHECK(pts[1].point == G({0, GaussQ(1, 2) * I, GaussQ(1, 2)}));
  CHECK(pts[2].point == G({0, GaussQ(-1, 2) * I, GaussQ(1, 2)}));
  for (const auto& p : pts) CHECK(p.exact);
}

TEST_CASE("curves in the standard charts") {
  const VField lorenz = load_system("lorenz.sys").field();
  const ChartedSystem u2 = to_chart(lorenz, standard_p3_atlas()[2]);
  const AccessibleLocus locus = find_accessible_singularities(u2);
  REQUIRE(locus.curves.size() == 1);
  CHECK(locus.curves[0].family.free == std::vector<std::string>{"Z2"});
  CHECK_THROWS_AS(isolated_points(locus), PositiveDimensionalLocus);
  REQUIRE(locus.points.size() == 3);
  CHECK(locus.points[0].point == G({0, 0, 0}));
  CHECK(locus.points[1].point == G({0, 0, I}));
  CHECK(locus.points[2].point == G({0, 0, -I}));
  CHECK(locus.points[0].vanishing_order == 1);
  CHECK(locus.points[1].vanishing_order == 2);
  CHECK(locus.points[2].vanishing_order == 2);
  for (const auto& p : locus.points) CHECK(p.on_curve);
}

TEST_CASE("fields without a pole have no accessible singularities") {
  const VField c("c", {"x", "y", "z"}, {RatExpr(1), RatExpr(), RatExpr()});
  const ChartedSystem cs = to_chart(c, standard_p3_atlas()[1]);
  CHECK(cs.pole_order == 0);
  const AccessibleLocus locus = find_accessible_singularities(cs);
  CHECK(locus.points.empty());
  CHECK(locus.curves.empty());
}

TEST_CASE("census over the atlas") {
  const VField lorenz = load_system("lorenz.sys").field();
  const SingularityCensus c = singularity_census(lorenz, lorenz_charts());
  REQUIRE(c.points.size() == 5);
  CHECK(c.numeric.empty());
  REQUIRE(c.exceptional.size() == 1);
  CHECK(c.exceptional[0].chart == "W(1,2,2)");
  CHECK(c.points[0].projective == G({0, 1, 0, 0}));
  CHECK(c.points[1].projective == G({0, 0, 1, 0}));
  CHECK(c.points[2].projective == G({0, 0, 0, 1}));
  CHECK(c.points[3].projective == G({0, 0, 1, I}));
  CHECK(c.points[4].projective == G({0, 0, 1, -I}));
  CHECK(c.points[3].label == "P4");
  // The weighted chart sees exactly the two non-origin points of U2.
  CHECK(c.points[3].appearances.size() == 3);
  CHECK(c.points[4].appearances.size() == 3);
  CHECK(c.curves.size() == 2);

  // Specializing parameters does not change the combinatorics.
  const VField spec = lorenz.with_params({{"sigma", GaussQ(1)}, {"epsilon", GaussQ(3)}, {"b", GaussQ(2)}});
  const SingularityCensus s = singularity_census(spec, lorenz_charts());
  REQUIRE(s.points.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) CHECK(s.points[k].projective == c.points[k].projective);
}

TEST_CASE("local index") {
  const VField lorenz = load_system("lorenz.sys").field();
  const auto charts = lorenz_charts();

  const LocalIndexResult p1 = local_index(to_chart(lorenz, charts[1]), G({0, 0, 0}));
  CHECK(p1.eigenvalues == G({0, I, -I}));
  CHECK(classify(p1) == IndexClass::VerticalOnly);

  const ChartedSystem u2 = to_chart(lorenz, charts[2]);
  CHECK(local_index(u2, G({0, 0, 0})).eigenvalues == G({0, 0, 0}));
  CHECK(local_index(to_chart(lorenz, charts[3]), G({0, 0, 0})).eigenvalues == G({0, 0, 0}));

  const ChartedSystem w = to_chart(lorenz, charts[4]);
  const LocalIndexResult p4 = local_index(w, G({0, GaussQ(1, 2) * I, GaussQ(1, 2)}));
  CHECK(p4.eigenvalues == G({GaussQ(-1, 2) * I, GaussQ(-2) * I, -I}));
  CHECK(*p4.ratios() == G({1, 4, 2}));
  const Resonances r4 = resonances(p4);
  CHECK(r4.applicable);
  CHECK(r4.values == std::vector<long>{4, 2});
  CHECK(classify(p4) == IndexClass::BlowupResolvable);

  const LocalIndexResult p5 = local_index(w, G({0, GaussQ(-1, 2) * I, GaussQ(1, 2)}));
  CHECK(p5.eigenvalues == G({GaussQ(1, 2) * I, GaussQ(2) * I, I}));
  CHECK(resonances(p5).values == std::vector<long>{4, 2});

  CHECK_THROWS_AS(local_index(w, G({0, 1, 1})), std::invalid_argument);
  CHECK_THROWS_AS(local_index(w, G({1, GaussQ(1, 2) * I, GaussQ(1, 2)})), std::invalid_argument);
}

TEST_CASE("classification from eigenvalues") {
  CHECK(classify(index_from_eigenvalues({1, 2, 3})) == IndexClass::BlowupResolvable);
  CHECK(classify(index_from_eigenvalues({1, -2, 3})) == IndexClass::MixedSign);
  CHECK(classify(index_from_eigenvalues({0, 1, 1})) == IndexClass::VerticalOnly);
  CHECK(classify(index_from_eigenvalues({2, 1, 4})) == IndexClass::VerticalOnly);
  CHECK(resonances(index_from_eigenvalues({2, 1, 4})).reason.find("not an integer") != std::string::npos);
  CHECK(to_string(IndexClass::MixedSign) == "mixed_sign");
}

TEST_CASE("index is invariant under rescaling time") {
  // Property: multiplying the field by a nonzero constant scales every eigenvalue and fixes the ratios.
  const VField lorenz = load_system("lorenz.sys").field();
  const Chart w = weighted_chart({1, 2, 2});
  const auto p = G({0, GaussQ(1, 2) * I, GaussQ(1, 2)});
  const LocalIndexResult base = local_index(to_chart(lorenz, w), p);
  for (long k : {2L, -3L, 5L}) {
    std::vector<RatExpr> comps;
    for (const auto& c : lorenz.components()) comps.push_back(c * RatExpr(GaussQ(k)));
    const VField scaled("s", lorenz.statevars(), comps, lorenz.params());
    const LocalIndexResult r = local_index(to_chart(scaled, w), p);
    CHECK(*r.ratios() == *base.ratios());
    for (std::size_t j = 0; j < 3; ++j) CHECK(r.eigenvalues[j] == base.eigenvalues[j] * GaussQ(k));
  }
}
