#include <sstream>

#include "doctest.h"
#include "phasekit/builtin.hpp"
#include "phasekit/numeric.hpp"
#include "phasekit/painleve.hpp"
#include "phasekit/resolve.hpp"
#include "test_util.hpp"

using namespace phasekit;

TEST_CASE("zero field gives a constant trajectory") {
  const VField zero("zero", {"x", "y", "z"}, {RatExpr(), RatExpr(), RatExpr()});
  const Trajectory tr = integrate(zero, {1, 2, 3}, 0, 1, 0.1);
  CHECK(tr.times.size() == 11);
  for (const auto& s : tr.states) CHECK(s == CState{1, 2, 3});
  CHECK(drift_check(tr, zero, R("x*y + z^2")) == 0.0);
  CHECK(!tr.blow_up);
}

TEST_CASE("exponential symbols and time") {
  // dx/dt = E x with E = exp(-t): x(t) = exp(1 - exp(-t)).
  const VField v("e", {"x"}, {R("E*x")}, {}, {ExpSymbol{"E", GaussQ(-1)}});
  const Trajectory tr = integrate(v, {1}, 0, 1, 1e-3);
  CHECK(std::abs(tr.states.back()[0] - std::exp(1 - std::exp(-1.0))) < 1e-10);
  // Unbound parameters cannot be evaluated.
  CHECK_THROWS_AS(integrate(VField("p", {"x"}, {R("a*x")}, {"a"}), {1}, 0, 1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(integrate(v, {1}, 0, 1, 0), std::invalid_argument);
}

TEST_CASE("first integral drift") {
  const SystemDoc s31 = builtin_system("system31");
  const Trajectory t31 = integrate(s31.field(), {1, 0, 0}, 0, 10, 1e-3);
  CHECK(drift_check(t31, s31.field(), s31.integrals[0].expr) <= 1e-8);
  for (const char* n : {"system41", "system51"}) {
    const SystemDoc d = builtin_system(n);
    const Trajectory tr = integrate(d.field(), {1, 0, 0}, 0, 2, 1e-4);
    CHECK(drift_check(tr, d.field(), d.integrals[0].expr) <= 1e-7);
  }
  // Control: a quantity that is not conserved drifts.
  CHECK(drift_check(t31, s31.field(), R("x^2 + 2*z")) > 1e-2);
}

TEST_CASE("fourth-order convergence") {
  const ConvergenceReport c = convergence_study(builtin_system("system31").field(), {1, 0, 0}, 2.0,
                                                {0.1, 0.05, 0.025, 0.0125});
  CHECK(c.orders.size() == 3);
  CHECK(c.mean_order == doctest::Approx(4.0).epsilon(0.075));
}

TEST_CASE("blow-up exponent along a balance") {
  const VField lz = lorenz_field().with_params({{"sigma", 10}, {"epsilon", 1}, {"b", GaussQ(8, 3)}});
  const auto bals = dominant_balances(lorenz_field());
  REQUIRE(!bals.empty());
  const double tau = -1e-2;
  CState x0;
  for (std::size_t k = 0; k < 3; ++k) {
    x0.push_back(bals[0].coefficients[k].to_complex() / std::pow(tau, bals[0].exponents[k]));
  }
  const BlowUpFit f = blowup_exponent(lz, x0, 1e-7);
  CHECK(f.traj.blow_up);
  CHECK(f.slope == doctest::Approx(-1.0).epsilon(0.05));
  CHECK(f.pole_time == doctest::Approx(-tau).epsilon(0.1));
}

TEST_CASE("batch integration matches serial") {
  const VField v = builtin_system("system31").field();
  std::vector<CState> x0s;
  for (int k = 0; k < 8; ++k) x0s.push_back({0.1 * k, 0.2, cplx(0.0, 0.1 * k)});
  const auto par = integrate_batch(v, x0s, 0, 1, 1e-3, 100);
  const auto ser = integrate_batch_serial(v, x0s, 0, 1, 1e-3, 100);
  REQUIRE(par.size() == ser.size());
  for (std::size_t k = 0; k < par.size(); ++k) {
    CHECK(par[k].times == ser[k].times);
    CHECK(par[k].states == ser[k].states);
  }
}

TEST_CASE("csv export") {
  const VField zero("zero", {"x"}, {RatExpr()});
  std::ostringstream out;
  write_csv(out, integrate(zero, {cplx(1, -2)}, 0, 0.5, 0.5), {"x"});
  CHECK(out.str() == "t,re_x,im_x\n0,1,-2\n0.5,1,-2\n");
}
