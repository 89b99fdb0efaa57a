#include <doctest.h>

#include "capsys/john.hpp"
#include "oracles.hpp"

using namespace capsys;

namespace {
Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}
std::vector<Vec> cube_vertices(int d) {
  std::vector<Vec> verts;
  for (int mask = 0; mask < (1 << d); ++mask) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = (mask >> i & 1) ? 1.0 : -1.0;
    verts.push_back(v);
  }
  return verts;
}
}  // namespace

TEST_CASE("enclosing ellipsoid: square gives the radius-sqrt(2) circle") {
  auto res = enclosing_ellipsoid(cube_vertices(2), 1e-6, true);
  CHECK(res.duality_gap <= 1e-6);
  CHECK(res.ellipsoid.center.norm() == 0.0);
  // Shape must be I/2 (radius sqrt(2)).
  CHECK((res.ellipsoid.shape - 0.5 * Mat::Identity(2, 2)).lpNorm<Eigen::Infinity>() <
        1e-6);
}

TEST_CASE("enclosing ellipsoid: 4-cube gives the radius-2 ball") {
  auto res = enclosing_ellipsoid(cube_vertices(4), 1e-6, true);
  CHECK((res.ellipsoid.shape - 0.25 * Mat::Identity(4, 4)).lpNorm<Eigen::Infinity>() <
        1e-6);
  CHECK(res.sandwich_factor == doctest::Approx(2.0));  // sqrt(2n), n = 2
  // Normal form of the radius-2 ball: both parameters 4 pi.
  REQUIRE(res.ellipsoid.axes.has_value());
  CHECK((*res.ellipsoid.axes)[0] == doctest::Approx(4.0 * M_PI).epsilon(1e-5));
}

TEST_CASE("enclosing ellipsoid: collinear points are rejected") {
  std::vector<Vec> line = {v2(0, 0), v2(1, 1), v2(2, 2)};
  CHECK_THROWS_AS(enclosing_ellipsoid(line, 1e-6, false), std::invalid_argument);
}

TEST_CASE("Khachiyan certificate on random symmetric polytopes") {
  oracles::Rng rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    auto verts = oracles::random_symmetric_vertices(rng, 4, 10);
    auto res = enclosing_ellipsoid(verts, 1e-6, true);
    CHECK(res.duality_gap <= 1e-6);
    double maxform = 0.0;
    for (const auto& p : verts)
      maxform = std::max(maxform, p.dot(res.ellipsoid.shape * p));
    CHECK(maxform <= 1.0 + 1e-6 + 1e-9);
    // Volume-optimality proxy: shrinking by (1 - 2 tol) along a random axis
    // expels at least one point.
    for (int axis_trial = 0; axis_trial < 3; ++axis_trial) {
      Vec axis = rng.gaussian(4);
      axis.normalize();
      const double factor = 1.0 - 2e-6;
      // Shrinking the ellipsoid along `axis` scales the quadratic form up.
      Mat grown = res.ellipsoid.shape +
                  (1.0 / (factor * factor) - 1.0) *
                      (res.ellipsoid.shape * axis) * (axis.transpose() * res.ellipsoid.shape) /
                      axis.dot(res.ellipsoid.shape * axis);
      double worst = 0.0;
      for (const auto& p : verts) worst = std::max(worst, p.dot(grown * p));
      CHECK(worst > 1.0 + 1e-9);
    }
  }
}

TEST_CASE("verify_sandwich: cube is tight in the symmetric case") {
  const Body cube = make_cube(2);
  auto res = enclosing_ellipsoid(*cube.vertices(), 1e-6, true);
  auto check = verify_sandwich(cube, res);
  CHECK(check.ok);
  // The shrunk ball has radius 2/sqrt(4) = 1: the inscribed ball of the cube.
  CHECK(res.sandwich_factor == doctest::Approx(2.0));
}

TEST_CASE("verify_sandwich: random symmetric polytope") {
  oracles::Rng rng(52);
  auto verts = oracles::random_symmetric_vertices(rng, 4, 12);
  const Body poly = make_vpolytope(verts);
  auto res = enclosing_ellipsoid(*poly.vertices(), 1e-6, true);
  CHECK(verify_sandwich(poly, res).ok);
}

TEST_CASE("verify_sandwich: a deliberately shrunken ellipsoid fails") {
  const Body cube = make_cube(2);
  auto res = enclosing_ellipsoid(*cube.vertices(), 1e-6, true);
  res.ellipsoid.shape *= 4.0;  // halves every semi-axis: vertices escape
  auto check = verify_sandwich(cube, res);
  CHECK_FALSE(check.ok);
  CHECK(check.max_vertex_form > 1.0 + 1e-6);
}

TEST_CASE("capacity_bound_report: the ball bounds itself") {
  const Body ball = make_ellipsoid({1, 1});
  SolveConfig cfg;
  cfg.starts = 3;
  cfg.seed = 4;
  auto rep = capacity_bound_report(ball, cfg);
  CHECK(rep.c1_ellipsoid == doctest::Approx(1.0));
  CHECK(rep.c1_numeric_value == doctest::Approx(1.0).epsilon(0.01));
  CHECK(rep.bound_holds);
  CHECK(rep.index_bound_value == 8);  // centrally symmetric, n = 2
}
