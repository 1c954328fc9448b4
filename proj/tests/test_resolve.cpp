#include <random>

#include "doctest.h"
#include "phasekit/resolve.hpp"
#include "test_util.hpp"

using namespace phasekit;

namespace {

const GaussQ I = GaussQ::i();

std::vector<GaussQ> grid_values(std::initializer_list<GaussQ> v) { return v; }

}  // namespace

TEST_CASE("resolution steps") {
  const auto steps = resolution_sequence_p4();
  REQUIRE(steps.size() == 6);
  CHECK(steps[0].label == "Step 0");
  CHECK(steps[0].map.apply({0, GaussQ(1, 2) * I, GaussQ(1, 2)}) == std::vector<GaussQ>{0, 0, 0});
  CHECK(jacobian_det(steps[1].map) == RatExpr(1));
  // Step 2 at p1 = 1 leaves q and r unchanged.
  CHECK(steps[2].map.apply({1, 3, GaussQ(2) * I}) == std::vector<GaussQ>{1, 3, GaussQ(2) * I});
  CHECK(steps[5].map.target() == std::vector<std::string>{"u", "v", "w"});
}

TEST_CASE("symbolic resolution matches the stated conditions") {
  const ResolutionResult r = apply_resolution(lorenz_field());
  CHECK(r.poles.size() == 4);
  CHECK(!r.polynomial());
  const auto m = match_conditions(r);
  REQUIRE(m.size() == 4);
  for (const auto& c : m) REQUIRE(c.ratio);
  CHECK(*m[0].ratio == P("4/9*i*epsilon^2"));
  CHECK(*m[1].ratio == P("-4/3*epsilon^2"));
  CHECK(*m[2].ratio == P("-2/27*epsilon^2"));
  CHECK(*m[3].ratio == P("-1/3*i*epsilon"));
  CHECK(m[1].monomial == "w");
  // The u component never has a pole.
  for (const auto& p : r.poles) CHECK(p.component != "u");
}

TEST_CASE("specialized resolutions") {
  const auto f = lorenz_field();
  CHECK(apply_resolution(f, ResolutionCenter::P4, {{"sigma", 2}, {"epsilon", 0}, {"b", 1}}).polynomial());
  const ResolutionResult bad = apply_resolution(f, ResolutionCenter::P4, {{"sigma", 1}, {"epsilon", 1}, {"b", 1}});
  CHECK(!bad.polynomial());
  // Third condition at (1, 1, 1): (1 - 5 - 2 + 3)(0 - 9) = 27.
  CHECK(resolution_conditions()[2].evaluate({{"sigma", 1}, {"epsilon", 1}, {"b", 1}}) == MultiPoly(27));
}

TEST_CASE("check_resolvable") {
  CHECK(check_resolvable({GaussQ(1, 3), 7, 0}));
  CHECK(check_resolvable({1, -3, 2}));
  CHECK(check_resolvable({1, 3, 2}));
  CHECK(check_resolvable({2, 0, 1}));
  CHECK(!check_resolvable({1, 1, 1}));
  CHECK(!check_resolvable({10, 1, GaussQ(8, 3)}));
}

TEST_CASE("solve_conditions") {
  const auto fams = solve_conditions();
  REQUIRE(fams.size() == 4);
  CHECK(fams[0].free == std::vector<std::string>{"epsilon"});
  CHECK(fams[0].values.at("sigma") == R("1/3"));
  CHECK(fams[0].values.at("b") == R("0"));
  std::vector<std::vector<GaussQ>> pts;
  for (std::size_t k = 1; k < 4; ++k) pts.push_back(fams[k].point({"sigma", "epsilon", "b"}));
  CHECK(pts == std::vector<std::vector<GaussQ>>{{1, -3, 2}, {1, 3, 2}, {2, 0, 1}});
  for (const auto& f : fams) {
    auto it = f.values.find("b");
    if (it != f.values.end()) CHECK(it->second != R("5"));
  }

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-50, 50);
  for (int k = 0; k < 3; ++k) {
    CHECK(check_resolvable({GaussQ(1, 3), GaussQ(d(rng), 7), 0}));
  }
}

TEST_CASE("P5 resolution is the conjugate") {
  const ResolutionResult p4 = apply_resolution(lorenz_field());
  const ResolutionResult p5 = apply_resolution(lorenz_field(), ResolutionCenter::P5);
  REQUIRE(p4.poles.size() == p5.poles.size());
  for (std::size_t k = 0; k < p4.poles.size(); ++k) {
    CHECK(p5.poles[k].coeff == p4.poles[k].coeff.conj());
  }
}

TEST_CASE("conditions agree with specialized resolutions on a grid") {
  const auto sig = grid_values({GaussQ(1, 3), 1, 2, -1, GaussQ(1, 2)});
  const auto eps = grid_values({3, -3, 1, 2, GaussQ(-1, 2)});
  const auto bs = grid_values({0, 2, 1, -1, 5});
  const GridReport par = grid_check(sig, eps, bs);
  CHECK(par.points == 125);
  CHECK(par.mismatches.empty());
  // (1/3, eps, 0) for five eps plus (1, +-3, 2).
  CHECK(par.resolvable == 7);
  const GridReport ser = grid_check_serial(sig, eps, bs);
  CHECK(ser.resolvable == par.resolvable);
  CHECK(ser.mismatches.size() == par.mismatches.size());
}
