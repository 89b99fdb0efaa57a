#include <doctest.h>

#include "capsys/convex.hpp"
#include "oracles.hpp"

using namespace capsys;

namespace {
Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}
}  // namespace

TEST_CASE("facet enumeration: square and diamond") {
  std::vector<Vec> square = {v2(1, 1), v2(-1, 1), v2(-1, -1), v2(1, -1)};
  auto f = enumerate_facets(square);
  CHECK(f.size() == 4);
  for (const auto& facet : f) {
    CHECK(facet.offset == doctest::Approx(1.0));
    CHECK(facet.normal.norm() == doctest::Approx(1.0));
  }
  std::vector<Vec> diamond = {v2(1, 0), v2(0, 1), v2(-1, 0), v2(0, -1)};
  auto g = enumerate_facets(diamond);
  CHECK(g.size() == 4);
  for (const auto& facet : g)
    CHECK(facet.offset == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("facet enumeration: 4-cube has 8 facets") {
  std::vector<Vec> verts;
  for (int mask = 0; mask < 16; ++mask) {
    Vec v(4);
    for (int i = 0; i < 4; ++i) v(i) = (mask >> i & 1) ? 1.0 : -1.0;
    verts.push_back(v);
  }
  auto f = enumerate_facets(verts);
  CHECK(f.size() == 8);
}

TEST_CASE("facet enumeration rejects non-spanning input") {
  std::vector<Vec> line = {v2(0, 0), v2(1, 1), v2(2, 2)};
  CHECK_THROWS_AS(enumerate_facets(line), std::invalid_argument);
}

TEST_CASE("chebyshev center of a shifted square") {
  std::vector<Vec> square = {v2(3, 1), v2(1, 1), v2(1, -1), v2(3, -1)};
  auto f = enumerate_facets(square);
  Vec hint = v2(2, 0);
  auto c = chebyshev_center(f, hint);
  CHECK(c.center(0) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::abs(c.center(1)) < 1e-9);
  CHECK(c.radius == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("distance to hull matches the subset-enumeration oracle") {
  oracles::Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform() * 3);  // 2..4
    const int m = 1 + static_cast<int>(rng.uniform() * 6);  // 1..6
    std::vector<Vec> gens;
    for (int i = 0; i < m; ++i) gens.push_back(rng.gaussian(d));
    const Vec p = rng.gaussian(d);
    const double got = distance_to_hull(p, gens).distance;
    const double want = oracles::subset_hull_distance(p, gens);
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("distance to hull: interior point gives zero") {
  std::vector<Vec> gens = {v2(1, 0), v2(-1, 1), v2(-1, -1)};
  CHECK(distance_to_hull(v2(0, 0), gens).distance < 1e-12);
}

TEST_CASE("polygon area") {
  std::vector<Vec> square = {v2(1, 1), v2(-1, 1), v2(-1, -1), v2(1, -1)};
  CHECK(polygon_area(square) == doctest::Approx(4.0));
  std::vector<Vec> diamond = {v2(1, 0), v2(0, 1), v2(-1, 0), v2(0, -1)};
  CHECK(polygon_area(diamond) == doctest::Approx(2.0));
}

TEST_CASE("simplex: maximize over a box") {
  // max x + y s.t. x <= 2, y <= 3, x + y <= 4 (origin strictly feasible)
  Mat A(3, 2);
  A << 1, 0, 0, 1, 1, 1;
  Vec b(3);
  b << 2, 3, 4;
  Vec c(2);
  c << 1, 1;
  auto z = simplex_maximize(A, b, c);
  REQUIRE(z.has_value());
  CHECK(c.dot(*z) == doctest::Approx(4.0));
}
