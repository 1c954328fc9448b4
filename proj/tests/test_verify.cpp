#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "phasekit/builtin.hpp"
#include "phasekit/errors.hpp"
#include "phasekit/verify.hpp"
#include "test_util.hpp"

using namespace phasekit;

TEST_CASE("bundled documents match the data directory") {
  for (const auto& n : builtin_names()) {
    std::ifstream in(std::string(PHASEKIT_DATA_DIR) + "/" + n + ".sys");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == builtin_text(n));
    CHECK(builtin_system(n) == load_system(n + ".sys"));
  }
}

TEST_CASE("first integrals") {
  const SystemDoc s31 = builtin_system("system31");
  CHECK(verify_first_integral(s31.field(), s31.integrals[0].expr));
  CHECK(!verify_first_integral(s31.field(), R("x^2 + 2*z")));
  for (const char* n : {"system41", "system51"}) {
    const SystemDoc d = builtin_system(n);
    CHECK(verify_first_integral(d.field(), d.integrals[0].expr));
  }
  // The e^{6t} factor is needed: without it the Lie derivative is -6(x^2 - 2z).
  const VField s41 = builtin_system("system41").field();
  CHECK(lie_derivative(s41, R("x^2 - 2*z")) == R("-6*x^2 + 12*z"));
  // Rate sign matters.
  const VField s51 = builtin_system("system51").field();
  CHECK(!verify_first_integral(s51, builtin_system("system41").integrals[0].expr.substitute({{"E", R("1/E")}})));

  const VField control =
      builtin_system("lorenz").field().with_params({{"sigma", 10}, {"epsilon", 1}, {"b", GaussQ(8, 3)}});
  CHECK(!verify_first_integral(control, R("x^2 - 2*z")));
}

TEST_CASE("reductions are exact identities") {
  for (auto k : {ReductionKind::ThirdOrder21, ReductionKind::InceVIII31, ReductionKind::Reduced41,
                 ReductionKind::ChangeOfVars41}) {
    CAPTURE(to_string(k));
    CHECK(verify_reduction(k));
    CHECK_THROWS_AS(verify_reduction(k, GaussQ(1, 5)), IdentityFailed);
    CHECK(reduction_from_string(to_string(k)) == k);
  }
  try {
    verify_reduction(ReductionKind::InceVIII31, GaussQ(1));
    FAIL("perturbed identity passed");
  } catch (const IdentityFailed& e) {
    CHECK(e.residual() == "-x^3");
  }
  CHECK_THROWS_AS(reduction_from_string("nope"), std::invalid_argument);
}

TEST_CASE("atlases") {
  const AtlasReport t31 = verify_atlas(theorem31_atlas());
  CHECK(t31.ok());
  REQUIRE(t31.charts.size() == 2);
  for (const auto& c : t31.charts) {
    CHECK(c.polynomial);
    CHECK(c.jacobian == RatExpr(1));
  }

  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int trial = 0; trial < 3; ++trial) {
    const std::map<std::string, GaussQ> vals{{"alpha1", GaussQ(d(rng), 2)},
                                             {"alpha2", GaussQ(d(rng), 3)},
                                             {"alpha3", GaussQ(d(rng)) + GaussQ::i() * GaussQ(d(rng))},
                                             {"epsilon", GaussQ(d(rng) | 1, 5)}};
    CHECK(verify_atlas(theorem41_atlas().with_params(vals)).ok());
  }
  CHECK(verify_atlas(theorem41_atlas()).ok());

  const AtlasReport p62 = verify_atlas(prop62_atlas());
  CHECK(p62.ok());
  CHECK(p62.charts.size() == 3);
  CHECK(p62.charts[2].jacobian == R("-1/y"));

  // A field that is not adapted to the atlas fails polynomiality.
  AtlasSpec wrong = theorem31_atlas();
  wrong.base = builtin_system("lorenz").field().with_params({{"sigma", 1}, {"b", 1}});
  const AtlasReport bad = verify_atlas(wrong);
  CHECK(!bad.ok());
  CHECK(!bad.charts[0].residual_poles.empty());
}

TEST_CASE("triangular charts invert correctly") {
  const Chart c = triangular_chart("T", {"x", "y", "z"}, {"a", "b", "c"}, {R("1/x"), R("x^2*y + z*x"), R("z - x^3")});
  CHECK(c.map.apply_inverse(c.map.apply({2, 3, 5})) == std::vector<GaussQ>{2, 3, 5});
  CHECK_THROWS_AS(triangular_chart("T", {"x", "y", "z"}, {"a", "b", "c"}, {R("1/x"), R("y^2"), R("z")}),
                  std::invalid_argument);
}

TEST_CASE("uniqueness of the quadratic system") {
  for (long e : {1L, 3L, -2L}) {
    const auto u = uniqueness_search(theorem31_atlas().with_params({{"epsilon", e}}));
    CHECK(u.nullspace.size() == 1);
    CHECK(u.rank == 29);
    REQUIRE(u.normalized);
    CHECK(*u.normalized == builtin_system("system21").field().with_params({{"epsilon", e}}));
  }
  const std::map<std::string, GaussQ> vals{{"alpha1", 1}, {"alpha2", 1}, {"alpha3", 1}, {"epsilon", 1}};
  const auto u = uniqueness_search(theorem41_atlas().with_params(vals));
  REQUIRE(u.normalized);
  CHECK(*u.normalized == builtin_system("m21").field().with_params(vals));

  // No charts: nothing constrains the ansatz.
  AtlasSpec bare = theorem31_atlas().with_params({{"epsilon", 3}});
  bare.charts.clear();
  const auto free = uniqueness_search(bare);
  CHECK(free.nullspace.size() == 30);
  CHECK(!free.normalized);
}

TEST_CASE("uniqueness does not depend on chart order or threading") {
  AtlasSpec a = theorem31_atlas().with_params({{"epsilon", 3}});
  const auto forward = uniqueness_search(a);
  std::reverse(a.charts.begin(), a.charts.end());
  const auto reversed = uniqueness_search(a);
  CHECK(forward.nullspace == reversed.nullspace);
  CHECK(forward.rank == reversed.rank);
  const auto serial = uniqueness_search_serial(a);
  CHECK(serial.nullspace == reversed.nullspace);
  CHECK(serial.constraints == reversed.constraints);
}
