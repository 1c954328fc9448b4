#include "doctest.h"
#include "phasekit/builtin.hpp"
#include "phasekit/report.hpp"
#include "test_util.hpp"

using namespace phasekit;
using report::json;

TEST_CASE("value formatting") {
  CHECK(report::exact(GaussQ(1, 2) + GaussQ::i() * GaussQ(3)).dump() == R"({"exact":true,"value":"1/2+3*i"})");
  CHECK(report::exact(-GaussQ::i())["value"] == "-i");
  const json n = report::numeric(cplx(0.1, -2.0));
  CHECK(n["exact"] == false);
  CHECK(n["value"] == "0.1-2*i");
  CHECK(report::numeric(cplx(1.0 / 3.0, 0))["value"] == "0.333333333333333+0*i");
}

TEST_CASE("argument parsing") {
  const auto p = report::parse_params("sigma=2, epsilon=1/3,b=-i");
  CHECK(p.at("sigma") == GaussQ(2));
  CHECK(p.at("epsilon") == GaussQ(1, 3));
  CHECK(p.at("b") == -GaussQ::i());
  CHECK(report::parse_params("").empty());
  CHECK_THROWS_AS(report::parse_params("sigma"), std::invalid_argument);
  CHECK(report::parse_point("0,1/2*i,1/2") == std::vector<GaussQ>{0, GaussQ(1, 2) * GaussQ::i(), GaussQ(1, 2)});
  CHECK(report::parse_numeric_point("1e-3,2")[0] == cplx(1e-3, 0));
  CHECK(report::chart_by_name("W(1,2,2)", {"x", "y", "z"}).name == "W(1,2,2)");
  CHECK(report::chart_by_name("U3", {"x", "y", "z"}).name == "U3");
  CHECK_THROWS_AS(report::chart_by_name("U4", {"x", "y", "z"}), std::invalid_argument);
  CHECK_THROWS_AS(report::chart_by_name("V", {"x", "y", "z"}), std::invalid_argument);
}

TEST_CASE("analyze reports") {
  report::AnalyzeOptions opt;
  opt.skip_numeric = true;
  const json a = report::analyze(builtin_system("lorenz"), opt);
  CHECK(a["singularities"]["count"] == 5);
  CHECK(a["resolution"]["families"].size() == 4);
  CHECK(a["resolution"]["resolvable"].is_null());
  CHECK(a["failures"].empty());
  CHECK(a.dump() == report::analyze(builtin_system("lorenz"), opt).dump());

  opt.params = {{"sigma", 2}, {"epsilon", 0}, {"b", 1}};
  CHECK(report::analyze(builtin_system("lorenz"), opt)["resolution"]["resolvable"] == true);
  opt.params = {{"sigma", 1}, {"epsilon", 1}, {"b", 1}};
  CHECK(report::analyze(builtin_system("lorenz"), opt)["resolution"]["resolvable"] == false);
  opt.params = {{"rho", 1}};
  CHECK_THROWS_AS(report::analyze(builtin_system("lorenz"), opt), std::invalid_argument);

  opt.params = {};
  opt.charts = "standard";
  const json s = report::analyze(builtin_system("system21"), opt);
  CHECK(s["atlas"]["ok"] == true);
  CHECK(!s.contains("resolution"));
  opt.charts = "sideways";
  CHECK_THROWS_AS(report::analyze(builtin_system("system21"), opt), std::invalid_argument);
}

TEST_CASE("failures are collected") {
  // A non-conserved declared integral is report content, not an exception.
  SystemDoc d = builtin_system("system31");
  d.integrals[0].expr = R("x^2 + 2*z");
  std::vector<std::string> failures;
  const json j = report::integrals_section(d, {}, failures);
  CHECK(j[0]["conserved"] == false);
  CHECK(failures.size() == 1);
}
