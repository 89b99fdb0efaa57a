#include <doctest.h>

#include "capsys/reference_loops.hpp"
#include "capsys/solver.hpp"
#include "oracles.hpp"

using namespace capsys;

namespace {

Vec v4(double a, double b, double c, double d) {
  Vec v(4);
  v << a, b, c, d;
  return v;
}

FourierLoop ball_minimizer(int N = 24) {
  FourierLoop x(4, N);
  x.at(1)(0) = 1.0 / std::sqrt(M_PI);
  return x;
}

SolveConfig fast_cfg(int starts = 4, std::uint64_t seed = 7) {
  SolveConfig cfg;
  cfg.starts = starts;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("psi at the ball minimizer equals 1") {
  const Body ball = make_ellipsoid({1, 1});
  const FourierLoop x = ball_minimizer();
  CHECK(action(x) == doctest::Approx(1.0));
  CHECK(psi(ball, x, 192, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  // Hand quadrature: |xdot| = 2 pi / sqrt(pi), H*(u) = |u|^2/(4 pi).
  const double speed = 2.0 * M_PI / std::sqrt(M_PI);
  CHECK(speed * speed / (4.0 * M_PI) == doctest::Approx(1.0));
}

TEST_CASE("psi: S1 invariance at grid shifts, scaling covariance") {
  oracles::Rng rng(31);
  const Body k = make_bxb1();
  FourierLoop x = normalize_action(oracles::positive_action_loop(rng, 4, 6));
  const int M = 64;
  const double base = psi(k, x, M, 0.0);
  for (int j : {1, 7, 32}) {
    const double shifted = psi(k, phase_shift(x, static_cast<double>(j) / M), M, 0.0);
    CHECK(std::abs(shifted - base) <= 1e-12 * (1.0 + std::abs(base)));
  }
  for (double lam : {0.5, 2.0}) {
    const double scaled = psi(scale(k, lam), x, M, 0.0);
    CHECK(scaled == doctest::Approx(lam * lam * base).epsilon(1e-12));
  }
}

TEST_CASE("subgrad_psi: finite differences at tau > 0") {
  oracles::Rng rng(32);
  const Body bodies[] = {make_bxb1(), make_ellipsoid({1, 2})};
  for (const Body& body : bodies) {
    for (int trial = 0; trial < 10; ++trial) {
      FourierLoop x = normalize_action(oracles::positive_action_loop(rng, 4, 5));
      const int M = 32;
      const double tau = 0.05;
      const FourierLoop g = subgrad_psi(body, x, M, tau);
      const FourierLoop d = oracles::random_loop(rng, 4, 5);
      // H1 pairing of the preconditioned gradient = Euclidean pairing of the
      // raw gradient = directional derivative of the quadrature value.
      double pair = 0.0;
      for (int k = -5; k <= 5; ++k) {
        if (k == 0) continue;
        pair += (2.0 * M_PI * k) * (2.0 * M_PI * k) * g.at(k).dot(d.at(k));
      }
      const double h = 1e-6;
      FourierLoop xp = x, xm = x;
      xp.coef += h * d.coef;
      xm.coef -= h * d.coef;
      const double fd = (psi(body, xp, M, tau) - psi(body, xm, M, tau)) / (2.0 * h);
      CHECK(std::abs(pair - fd) <= 1e-4 * (1.0 + std::abs(fd)));
    }
  }
}

TEST_CASE("subgrad_psi: phase equivariance") {
  oracles::Rng rng(33);
  const Body k = make_bxb1();
  FourierLoop x = oracles::random_loop(rng, 4, 4);
  const int M = 32;
  const double theta = 5.0 / M;  // grid shift keeps the quadrature set fixed
  const FourierLoop g_shifted = subgrad_psi(k, phase_shift(x, theta), M, 0.1);
  const FourierLoop shifted_g = phase_shift(subgrad_psi(k, x, M, 0.1), theta);
  CHECK((g_shifted.coef - shifted_g.coef).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("subgrad_psi: projected gradient vanishes at the ball minimizer") {
  const Body ball = make_ellipsoid({1, 1});
  const FourierLoop x = ball_minimizer();
  const FourierLoop g = subgrad_psi(ball, x, 192, 0.0);
  const double val = psi(ball, x, 192, 0.0);
  // Tangent projection of the H/A gradient: G - psi * (xhat(k)/(2 pi k)).
  double norm2 = 0.0;
  for (int k = -x.modes; k <= x.modes; ++k) {
    if (k == 0) continue;
    const Vec resid = g.at(k) - val * x.at(k) / (2.0 * M_PI * k);
    norm2 += (2.0 * M_PI * k) * (2.0 * M_PI * k) * resid.squaredNorm();
  }
  CHECK(std::sqrt(norm2) < 1e-8);
}

TEST_CASE("minimize: ball capacity within 1%") {
  const Body ball = make_ellipsoid({1, 1});
  auto runs = minimize(ball, fast_cfg(4));
  REQUIRE(!runs.empty());
  CHECK(runs.front().converged);
  CHECK(runs.front().value == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("minimize: E(1,2) smallest normal-form parameter") {
  const Body e = make_ellipsoid({1, 2});
  auto runs = minimize(e, fast_cfg(4, 11));
  CHECK(runs.front().value == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("minimize: B_inf x B_1 within 2% of 4") {
  const Body k = make_bxb1();
  auto runs = minimize(k, fast_cfg(6, 3));
  CHECK(runs.front().value == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("minimize: deterministic across worker counts") {
  const Body k = make_bxb1();
  SolveConfig cfg = fast_cfg(4, 5);
  cfg.max_iterations = 4000;
  auto a = minimize(k, cfg, 1);
  auto b = minimize(k, cfg, 4);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].value == b[i].value);
    CHECK(a[i].run_index == b[i].run_index);
    CHECK((a[i].x.coef - b[i].x.coef).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("minimize: S1 equivariance of the value list under shifted inits") {
  const Body e = make_ellipsoid({1, 2});
  SolveConfig cfg = fast_cfg(3, 17);
  auto base = minimize(e, cfg);
  cfg.init_phase = 24.0 / cfg.quadrature;  // grid shift
  auto shifted = minimize(e, cfg);
  REQUIRE(base.size() == shifted.size());
  for (size_t i = 0; i < base.size(); ++i)
    CHECK(std::abs(base[i].value - shifted[i].value) <=
          1e-9 * (1.0 + std::abs(base[i].value)));
}

TEST_CASE("recover_beta: centered ball gives beta = 0") {
  const Body ball = make_ellipsoid({1, 1});
  const FourierLoop x = ball_minimizer();
  const Vec beta = recover_beta(ball, x, 1.0, 192);
  CHECK(beta.norm() < 1e-8);
}

TEST_CASE("translated ball: re-solved beta recenters the loop onto the boundary") {
  // Translating the body reparametrizes the boundary flow, so the dual
  // minimizer genuinely changes; solve again and certify the reconstruction.
  const Vec v = v4(0.12, -0.05, 0.08, 0.1);
  const Body moved = translate(make_ellipsoid({1, 1}), v);
  SolveConfig cfg = fast_cfg(3, 23);
  auto runs = minimize(moved, cfg);
  const auto& best = runs.front();
  CHECK(best.value == doctest::Approx(1.0).epsilon(0.01));
  const Vec beta = recover_beta(moved, best.x, best.value, cfg.quadrature);
  auto res = reconstruct(moved, best.x, best.value, beta, cfg.quadrature);
  CHECK(res.boundary_residual <= 1e-6);
  CHECK(std::abs(res.T - best.value) <= 1e-6 * best.value);
}

TEST_CASE("reconstruct: action identity and ball circle") {
  const Body ball = make_ellipsoid({1, 1});
  const FourierLoop x = ball_minimizer();
  const Vec beta = recover_beta(ball, x, 1.0, 192);
  auto res = reconstruct(ball, x, 1.0, beta, 192);
  CHECK(std::abs(res.T - 1.0) <= 1e-9);
  CHECK(res.boundary_residual <= 1e-9);
  CHECK(res.inclusion_residual <= 1e-8);
  for (const auto& s : res.loop.samples)
    CHECK(s.norm() == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-9));
  CHECK_THROWS_AS(reconstruct(ball, x, -1.0, beta, 192), std::invalid_argument);
}

TEST_CASE("inclusion_residual: explicit loops certify at T = 4") {
  const Body k = make_bxb1();
  const TimeLoop g = bxb1_gamma().sample(4096);
  auto rep = inclusion_residual(k, g, 4.0);
  CHECK(rep.residual <= 1e-9);
  CHECK(rep.windows.size() >= 4);

  const TimeLoop g4 = bxb1_gamma_n(4).sample(4096);
  CHECK(inclusion_residual(k, g4, 4.0).residual <= 1e-9);
}

TEST_CASE("inclusion_residual: wrong action is rejected") {
  const Body ball = make_ellipsoid({1, 1});
  const TimeLoop circle = to_time(ball_minimizer(1), 256);
  // Scale to the boundary: the minimizer loop has |x| = 1/sqrt(pi) already.
  CHECK(inclusion_residual(ball, circle, 2.0).residual >= 0.5);
  CHECK(inclusion_residual(ball, circle, 1.0).residual <= 1e-9);
  CHECK_THROWS_AS(inclusion_residual(ball, circle, 0.0), std::invalid_argument);
}

TEST_CASE("minimize: scaling covariance of the best value") {
  const Body ball = make_ellipsoid({1, 1});
  SolveConfig cfg = fast_cfg(3, 19);
  const double base = minimize(ball, cfg).front().value;
  const double scaled = minimize(scale(ball, 2.0), cfg).front().value;
  CHECK(scaled == doctest::Approx(4.0 * base).epsilon(0.02));
}

TEST_CASE("solve config validation") {
  SolveConfig cfg;
  cfg.quadrature = 10;  // < 4N
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SolveConfig{};
  cfg.tol = 0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SolveConfig{};
  cfg.tau_decay = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
