#include <doctest.h>

#include "capsys/reference_loops.hpp"
#include "oracles.hpp"

using namespace capsys;

TEST_CASE("gamma endpoints match the piecewise formula") {
  const auto g = bxb1_gamma();
  Vec p0 = g.eval(0.0), p1 = g.eval(0.25);
  CHECK(p0(0) == doctest::Approx(-1.0));
  CHECK(p0(1) == doctest::Approx(0.0));
  CHECK(p0(2) == doctest::Approx(-1.0));
  CHECK(p0(3) == doctest::Approx(0.0));
  CHECK(p1(0) == doctest::Approx(1.0));
  CHECK(p1(2) == doctest::Approx(-1.0));
  CHECK(g.exact_action() == doctest::Approx(4.0));
}

TEST_CASE("gamma_n: uniform convergence at rate 1/n") {
  const auto g = bxb1_gamma();
  for (int n : {2, 4, 8}) {
    const auto gn = bxb1_gamma_n(n);
    double sup = 0.0;
    for (int j = 0; j < 10000; ++j) {
      const double t = j / 10000.0;
      sup = std::max(sup, (g.eval(t) - gn.eval(t)).lpNorm<Eigen::Infinity>());
    }
    CHECK(sup <= 1.0 / n + 1e-12);
    CHECK(gn.exact_action() == doctest::Approx(4.0));
  }
}

TEST_CASE("gamma_n: W11 separation >= 2 despite uniform convergence") {
  const auto g = bxb1_gamma();
  for (int n : {2, 4, 8}) {
    const auto gn = bxb1_gamma_n(n);
    // |d/dt(gamma - gamma_n)| = 8 a.e. on [0, 1/4]: integral exactly 2.
    double integral = 0.0;
    const int steps = 4000;
    for (int j = 0; j < steps; ++j) {
      const double t = (j + 0.5) * 0.25 / steps;
      integral += (g.deriv(t) - gn.deriv(t)).norm() * 0.25 / steps;
    }
    CHECK(integral >= 2.0 - 1e-6);
  }
}

TEST_CASE("all shipped generators certify at T = 4") {
  const Body k = make_bxb1();
  std::vector<PiecewiseLinearLoop> loops = {
      bxb1_gamma(),          bxb1_gamma_n(1),
      bxb1_gamma_n(2),       bxb1_gamma_n(8),
      bxb1_diagonal_systole(false), bxb1_diagonal_systole(true),
      bxb1_generic_systole(0.3, 0.4), bxb1_generic_systole(-0.5, 0.7, true)};
  for (const auto& pl : loops) {
    CHECK(pl.exact_action() == doctest::Approx(4.0).epsilon(1e-12));
    auto res = certify(k, pl.sample(4096), 4.0);
    CHECK(res.boundary_residual <= 1e-12);
    CHECK(res.inclusion_residual <= 1e-9);
  }
}

TEST_CASE("polydisc systoles: action 1 and range checks") {
  const double r = 1.0 / std::sqrt(M_PI);
  const TimeLoop f1 = polydisc_systole(1, {0.0, 0.0}, 512);
  const FourierLoop x = from_time(f1, 64);
  CHECK(std::abs(action(x) - 1.0) <= 1e-6);
  CHECK_THROWS_AS(polydisc_systole(1, {2.0 * r, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(polydisc_systole(3, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("run_regressions: full corpus passes on defaults") {
  auto rep = run_regressions();
  for (const auto& c : rep.checks) {
    INFO(c.example, ": ", c.name, " value=", c.value, " bound=", c.bound);
    CHECK(c.pass);
  }
  CHECK(rep.all_pass);
}

TEST_CASE("run_regressions: too-coarse resolution fails only the c1 check") {
  RegressionOptions opt;
  opt.modes = 8;
  opt.truncation = 8;
  auto rep = run_regressions(opt);
  CHECK_FALSE(rep.all_pass);
  for (const auto& c : rep.checks) {
    if (c.name == "numeric c1 error") {
      CHECK_FALSE(c.pass);
    } else {
      INFO(c.example, ": ", c.name);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("run_regressions: disabling corner windows breaks the certificates") {
  RegressionOptions opt;
  opt.corner_windows = false;
  opt.with_solver = false;
  auto rep = run_regressions(opt);
  bool some_inclusion_failed = false;
  for (const auto& c : rep.checks)
    if (c.name == "inclusion residual (T=4)" && !c.pass) some_inclusion_failed = true;
  CHECK(some_inclusion_failed);
}

TEST_CASE("named example manifest is nonempty and self-consistent") {
  auto ex = named_examples();
  CHECK(ex.size() >= 4);
  for (const auto& e : ex) CHECK(!e.name.empty());
}
