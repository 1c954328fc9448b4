#include <random>
#include <set>

#include "doctest.h"
#include "phasekit/errors.hpp"
#include "phasekit/painleve.hpp"
#include "test_util.hpp"

using namespace phasekit;

namespace {

const GaussQ I = GaussQ::i();

}  // namespace

TEST_CASE("Lorenz balances") {
  const VField lorenz = load_system("lorenz.sys").field();
  const auto bals = dominant_balances(lorenz);
  REQUIRE(bals.size() == 2);
  std::set<std::vector<GaussQ>, bool (*)(const std::vector<GaussQ>&, const std::vector<GaussQ>&)> coeffs(
      [](const std::vector<GaussQ>& a, const std::vector<GaussQ>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            [](const GaussQ& x, const GaussQ& y) { return lex_less(x, y); });
      });
  for (const auto& b : bals) {
    CHECK(b.exponents == std::vector<unsigned>{1, 2, 2});
    const GaussQ a = b.coefficients[0];
    CHECK(a * a == GaussQ(-4));
    CHECK(b.coefficients[1] == -a);
    CHECK(b.coefficients[2] == GaussQ(-2));
    for (const auto& r : balance_residuals(lorenz, b)) CHECK(r.is_zero());
    coeffs.insert(b.coefficients);
  }
  CHECK(coeffs.count({GaussQ(2) * I, GaussQ(-2) * I, GaussQ(-2)}) == 1);
  CHECK(coeffs.count({GaussQ(-2) * I, GaussQ(2) * I, GaussQ(-2)}) == 1);
  // Real field: branches are conjugate.
  CHECK(bals[0].coefficients[0].conj() == bals[1].coefficients[0]);

  const VField spec = lorenz.with_params({{"sigma", GaussQ(10)}, {"epsilon", GaussQ(1)}, {"b", GaussQ(8, 3)}});
  CHECK(dominant_balances(spec, 3).size() == 2);
}

TEST_CASE("linear field has no pole balance") {
  const VField lin("lin", {"x", "y", "z"}, {R("y"), R("-x"), R("z")});
  CHECK(dominant_balances(lin).empty());
}

TEST_CASE("planar system with exponential forcing") {
  // x' = x^2 - x*y - 2x, y' = y^2 - 3xy - 2y - I/2 E. With x ~ a/tau, y ~ b/tau:
  // -a = a^2 - a*b and -b = b^2 - 3*a*b, so b = a + 1 = 3a - 1.
  const VField xy = load_system("xy41.sys").field();
  const auto bals = dominant_balances(xy, 4);
  REQUIRE(bals.size() == 1);
  CHECK(bals[0].exponents == std::vector<unsigned>{1, 1});
  CHECK(bals[0].coefficients == std::vector<GaussQ>{GaussQ(1), GaussQ(2)});
}

TEST_CASE("balance exponents are found by brute force") {
  // Property: every returned balance has vanishing residuals, for a few
  // random quadratic fields with small integer coefficients.
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-2, 2);
  const std::vector<std::string> mons{"x^2", "x*y", "y^2", "x", "y"};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<RatExpr> comps;
    for (int k = 0; k < 2; ++k) {
      std::string s = "0";
      for (const auto& m : mons) s += " + (" + std::to_string(coef(rng)) + ")*" + m;
      comps.push_back(R(s));
    }
    const VField v("q", {"x", "y"}, comps);
    for (const auto& b : dominant_balances(v, 3)) {
      for (const auto& r : balance_residuals(v, b)) CHECK(r.is_zero());
      for (const auto& c : b.coefficients) CHECK(!c.is_zero());
    }
  }
}

TEST_CASE("balance charts") {
  Balance b{{1, 2, 2}, {}, 0};
  const Chart w = balance_to_chart(b);
  CHECK(w.map.forward() == std::vector<RatExpr>{R("1/x"), R("y/x^2"), R("z/x^2")});

  Balance b2{{2, 4, 4}, {}, 0};
  CHECK(balance_to_chart(b2).map.forward() == w.map.forward());

  Balance b1{{1, 1, 1}, {}, 0};
  const Chart u = balance_to_chart(b1, {"x", "y", "z"}, {"X1", "Y1", "Z1"});
  CHECK(u.map.forward() == standard_p3_atlas()[1].map.forward());
  CHECK(u.map.target() == standard_p3_atlas()[1].map.target());

  Balance bad{{2, 3, 4}, {}, 0};
  CHECK_THROWS_AS(balance_to_chart(bad), IncompatibleWeights);
}
