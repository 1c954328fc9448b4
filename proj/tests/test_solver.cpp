#include "doctest.h"
#include "phasekit/solver.hpp"
#include "test_util.hpp"

using namespace phasekit;

namespace {

std::vector<std::vector<GaussQ>> points(const SolveResult& r, const std::vector<std::string>& u) {
  std::vector<std::vector<GaussQ>> out;
  for (const auto& f : r.exact) {
    if (f.is_point()) out.push_back(f.point(u));
  }
  return out;
}

}  // namespace

TEST_CASE("zero-dimensional systems") {
  const auto r = solve_system({P("x^2 + y^2 - 2"), P("x - y")}, {"x", "y"});
  CHECK(points(r, {"x", "y"}) == std::vector<std::vector<GaussQ>>{{GaussQ(-1), GaussQ(-1)}, {GaussQ(1), GaussQ(1)}});
  CHECK(r.numeric.empty());

  // Leading-order balance equations with nonzero unknowns.
  const auto b = solve_system({P("a + b"), P("2*b - a*c"), P("2*c + a*b")}, {"a", "b", "c"}, {"a", "b", "c"});
  const GaussQ i = GaussQ::i();
  CHECK(points(b, {"a", "b", "c"}) ==
        std::vector<std::vector<GaussQ>>{{GaussQ(-2) * i, GaussQ(2) * i, GaussQ(-2)},
                                         {GaussQ(2) * i, GaussQ(-2) * i, GaussQ(-2)}});
}

TEST_CASE("curves are reported as families") {
  const auto r = solve_system({P("X^2*Z"), P("X*(1 + Z^2)")}, {"X", "Z"});
  int curves = 0;
  for (const auto& f : r.exact) {
    if (!f.is_point()) {
      ++curves;
      CHECK(f.free == std::vector<std::string>{"Z"});
      CHECK(f.values.at("X").is_zero());
    }
  }
  CHECK(curves == 1);
  const auto pts = points(r, {"X", "Z"});
  CHECK(pts.size() == 2);
}

TEST_CASE("irrational points fall back to numerics") {
  const auto r = solve_system({P("x^2 - 2"), P("y - x")}, {"x", "y"});
  CHECK(r.exact.empty());
  REQUIRE(r.numeric.size() == 2);
  for (const auto& p : r.numeric) CHECK(std::abs(std::abs(p.values[0]) - std::sqrt(2.0)) < 1e-9);
}

TEST_CASE("inconsistent and degenerate linear systems") {
  CHECK(solve_system({P("x - 1"), P("x - 2")}, {"x"}).exact.empty());
  // y*x = 1 and y = 0 has no solution; y*x = 0 splits.
  CHECK(solve_system({P("x*y - 1"), P("y")}, {"x", "y"}).exact.empty());
  const auto r = solve_system({P("x*y"), P("x + y - 1")}, {"x", "y"});
  CHECK(points(r, {"x", "y"}).size() == 2);
}
