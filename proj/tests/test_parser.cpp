#include <random>

#include "doctest.h"
#include "phasekit/docgen.hpp"
#include "phasekit/builtin.hpp"
#include "phasekit/sysdef.hpp"
#include "test_util.hpp"

using namespace phasekit;

TEST_CASE("Lorenz document") {
  const SystemDoc d = load_system("lorenz.sys");
  CHECK(d.name == "lorenz");
  CHECK(d.params == std::vector<std::string>{"sigma", "epsilon", "b"});
  const VField expected("lorenz", {"x", "y", "z"},
                        {R("y - sigma*epsilon*x"), R("-x*z + x - epsilon*y"), R("x*y - epsilon*b*z")},
                        {"sigma", "epsilon", "b"});
  CHECK(d.field() == expected);
}

TEST_CASE("lexical and syntax errors carry positions") {
  try {
    parse_system("system s\nvars x\ndx/dt = x $\n");
    FAIL("no error");
  } catch (const LexError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 11);
  }
  CHECK_THROWS_AS(parse_system(""), ParseError);
  CHECK_THROWS_AS(parse_system("system s\nvars x\ndx/dt = x +\n"), ParseError);
  CHECK_THROWS_AS(parse_system("system s\nvars x\ndx/dt = q*x\n"), UndeclaredSymbol);
  CHECK_THROWS_AS(parse_system("system s\nvars x y\ndx/dt = x\n"), ArityMismatch);
  CHECK_THROWS_AS(parse_system("system s\nvars x\ndx/dt = 1/x\n"), ParseError);
  CHECK_THROWS_AS(parse_system("system s\nvars x\ndx/dt = x^(2)\n"), ParseError);
  try {
    parse_system("system s\nvars x\ndx/dt = x*y\n");
  } catch (const UndeclaredSymbol& e) {
    CHECK(e.column() == 11);
  }
}

TEST_CASE("exponential symbols and integrals") {
  const SystemDoc d = load_system("system41.sys");
  REQUIRE(d.expsyms.size() == 1);
  CHECK(d.expsyms[0].name == "E");
  CHECK(d.expsyms[0].rate == GaussQ(6));
  REQUIRE(d.integrals.size() == 1);
  CHECK(d.integrals[0].expr == R("E*(x^2 - 2*z)"));
}

TEST_CASE("precedence") {
  CHECK(R("-x^2") == RatExpr() - R("x*x"));
  CHECK(R("2*x/3") == R("(2/3)*x"));
  CHECK(R("1 - 2 - 3") == R("-4"));
  CHECK(parse_gauss("3/2+i") == GaussQ(mpq_class(3, 2), mpq_class(1)));
  CHECK(parse_gauss("0.25") == GaussQ(1, 4));
}

TEST_CASE("round trips of the bundled documents") {
  for (const auto& n : builtin_names()) {
    const SystemDoc d = builtin_system(n);
    const std::string once = print_system(d);
    CHECK(parse_system(once) == d);
    CHECK(print_system(parse_system(once)) == once);
  }
  const SystemDoc g = parse_system("system g\nvars x\ndx/dt = (3/2 + i)*x\n");
  CHECK(parse_system(print_system(g)) == g);
  CHECK(g.components[0] == R("(3/2+i)*x"));
}

TEST_CASE("generated documents round-trip") {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int n = 0; n < 600; ++n) {
    const std::string text = random_document_text(rng, n);
    const SystemDoc d = parse_system(text);
    const std::string printed = print_system(d);
    const SystemDoc again = parse_system(printed);
    CHECK(again == d);
    CHECK(print_system(again) == printed);
    ++checked;
  }
  CHECK(checked >= 500);
}
