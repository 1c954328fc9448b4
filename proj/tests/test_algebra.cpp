#include <random>

#include "doctest.h"
#include "phasekit/errors.hpp"
#include "phasekit/linalg.hpp"
#include "phasekit/polyalg.hpp"
#include "phasekit/ratexpr.hpp"
#include "phasekit/sysdef.hpp"
#include "test_util.hpp"

using namespace phasekit;

namespace {

MultiPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int terms, int maxdeg) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> deg(0, maxdeg);
  MultiPoly p;
  for (int t = 0; t < terms; ++t) {
    std::map<std::string, unsigned> pw;
    for (const auto& v : vars) pw[v] = static_cast<unsigned>(deg(rng));
    p += MultiPoly::monomial(GaussQ(mpq_class(coef(rng)), mpq_class(coef(rng))), pw);
  }
  return p;
}

}  // namespace

TEST_CASE("gaussian rationals") {
  const GaussQ i = GaussQ::i();
  CHECK(i * i == GaussQ(-1));
  CHECK((GaussQ(3, 2) + i).str() == "3/2+i");
  CHECK(GaussQ(1, 3).str() == "1/3");
  CHECK((GaussQ(1) / (GaussQ(1) + i)) == GaussQ(mpq_class(1, 2), mpq_class(-1, 2)));
  CHECK(GaussQ(-4).sqrt() == GaussQ(2) * i);
  CHECK(GaussQ(2).sqrt() == std::nullopt);
  CHECK(parse_gauss("1/2+i") == GaussQ(mpq_class(1, 2), mpq_class(1)));
  CHECK(parse_gauss("0.25") == GaussQ(1, 4));
  CHECK(parse_gauss("-8/3") == GaussQ(-8, 3));
}

TEST_CASE("polynomial multiplication") {
  CHECK(P("(x + i*y)*(x - i*y)") == P("x^2 + y^2"));
  CHECK(P("(x^2 - 2*z)^2") == P("x^4 - 4*x^2*z + 4*z^2"));
  CHECK(P("x - x").is_zero());
  CHECK(P("x*y - y*x").vars().empty());
}

TEST_CASE("exact division") {
  CHECK(exact_div(P("x^2 - y^2"), P("x - y")) == P("x + y"));
  CHECK(exact_div(P("x^3*z + 2*x*z"), P("x*z")) == P("x^2 + 2"));
  CHECK_THROWS_AS(exact_div(P("x^2"), P("y")), NotDivisible);
  CHECK_THROWS_AS(exact_div(P("x^2 + 1"), P("x - 1")), NotDivisible);
}

TEST_CASE("gcd") {
  CHECK(make_monic(gcd(P("x^2 - 1"), P("x^2 + 2*x + 1"))) == P("x + 1"));
  CHECK(gcd(P("x^2*y + x*y^2"), P("x*y")) == P("x*y"));
  const MultiPoly g = P("x*y - z + 3");
  const MultiPoly a = g * P("x + z^2");
  const MultiPoly b = g * P("y - i*x + 1");
  CHECK(make_monic(gcd(a, b)) == make_monic(g));
  CHECK(gcd(P("x + 1"), P("y + 1")).is_constant());
}

TEST_CASE("resultants") {
  CHECK(resultant(P("Z^2 + 1"), P("Z - i"), "Z").is_zero());
  CHECK(resultant(P("Z^2 + 1"), P("Z - 1"), "Z") == P("2"));
  CHECK(resultant(P("x - c"), P("x - d"), "x") == P("c - d"));
  // Common root in x exactly when y = 1 or y = -1.
  const MultiPoly r = resultant(P("x^2 + y^2 - 2"), P("x - y"), "x");
  CHECK(make_monic(r) == P("y^2 - 1"));
}

TEST_CASE("roots over Q(i)") {
  auto rs = gaussian_roots(P("(Z^2 + 1)*(3*Z - 2)"), "Z");
  CHECK(rs.exact.size() == 3);
  CHECK(rs.remainder.is_constant());
  auto irr = gaussian_roots(P("Z^2 - 2"), "Z");
  CHECK(irr.exact.empty());
  CHECK(irr.remainder.degree("Z") == 2);
  auto q = gaussian_roots(P("4*Y^2 + 1"), "Y");
  REQUIRE(q.exact.size() == 2);
}

TEST_CASE("substitution and rational expressions") {
  CHECK(R("x^2 + y").substitute({{"x", R("1/X")}, {"y", R("Y/X^2")}}) == R("(1 + Y)/X^2"));
  CHECK(R("(x^2 - 1)/(x - 1)") == R("x + 1"));
  CHECK(R("1/x + 1/y") == R("(x + y)/(x*y)"));
  CHECK_THROWS_AS(R("x/(y - y)"), ParseError);
  CHECK(R("(2*x)/(4*x*y)").den() == P("y"));
  CHECK(time_derivative(R("E*(x^2 - 2*z)"), {{"E", GaussQ(6)}}) == R("6*E*(x^2 - 2*z)"));
}

TEST_CASE("linear algebra") {
  GaussMatrix m(0, 0);
  m.append_row({GaussQ(1), GaussQ(2), GaussQ(3)});
  m.append_row({GaussQ(2), GaussQ(4), GaussQ(6)});
  CHECK(m.rank() == 1);
  CHECK(m.nullspace().size() == 2);
  GaussMatrix s(0, 0);
  s.append_row({GaussQ(0), GaussQ::i()});
  s.append_row({GaussQ(2), GaussQ(1)});
  CHECK(s.determinant() == GaussQ(-2) * GaussQ::i());
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(7);
  const std::vector<std::string> vars{"x", "y", "z"};
  for (int k = 0; k < 1000; ++k) {
    const MultiPoly a = random_poly(rng, vars, 3, 2);
    const MultiPoly b = random_poly(rng, vars, 3, 2);
    const MultiPoly c = random_poly(rng, vars, 2, 1);
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a - a).is_zero());
    if (!b.is_zero()) REQUIRE(exact_div(a * b, b) == a);
  }
}

TEST_CASE("normalization is idempotent and cancels common factors") {
  std::mt19937 rng(11);
  const std::vector<std::string> vars{"x", "y"};
  for (int k = 0; k < 200; ++k) {
    const MultiPoly n = random_poly(rng, vars, 3, 2);
    const MultiPoly d = random_poly(rng, vars, 2, 2);
    const MultiPoly g = random_poly(rng, vars, 2, 1);
    if (d.is_zero() || g.is_zero()) continue;
    const RatExpr r(n, d);
    REQUIRE(RatExpr(r.num(), r.den()) == r);
    REQUIRE(RatExpr(n * g, d * g) == r);
    REQUIRE(r.den().leading_coeff().is_one());
  }
}
