#include <doctest.h>

#include "capsys/capacities.hpp"
#include "oracles.hpp"

using namespace capsys;

TEST_CASE("ellipsoid_sequence: merged multiples") {
  auto ball = ellipsoid_sequence({1, 1}, 6);
  CHECK(ball.values == std::vector<double>{1, 1, 2, 2, 3, 3});
  auto e12 = ellipsoid_sequence({1, 2}, 6);
  CHECK(e12.values == std::vector<double>{1, 2, 2, 3, 4, 4});
  // n identical streams: c_i = ceil(i/n) * a.
  auto same = ellipsoid_sequence({0.7, 0.7, 0.7}, 9);
  for (int i = 1; i <= 9; ++i)
    CHECK(same.values[i - 1] == doctest::Approx(std::ceil(i / 3.0) * 0.7));
}

TEST_CASE("ellipsoid_sequence agrees with the brute-force merge") {
  oracles::Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform() * 4);
    std::vector<double> a;
    for (int i = 0; i < n; ++i) {
      // Rational inputs p/q with small q: merge order must be exact.
      const int p = 1 + static_cast<int>(rng.uniform() * 40);
      const int q = 1 + static_cast<int>(rng.uniform() * 12);
      a.push_back(static_cast<double>(p) / q);
    }
    const int m = 1 + static_cast<int>(rng.uniform() * 30);
    auto seq = ellipsoid_sequence(a, m);
    auto brute = oracles::brute_merge(a, m);
    for (int i = 0; i < m; ++i)
      CHECK(seq.values[i] == doctest::Approx(brute[i]).epsilon(1e-13));
    for (int i = 1; i < m; ++i) CHECK(seq.values[i] >= seq.values[i - 1]);
  }
}

TEST_CASE("ellipsoid_sequence is 1-homogeneous in the parameters") {
  auto base = ellipsoid_sequence({1, 2, 3.5}, 12);
  auto scaled = ellipsoid_sequence({2.5, 5, 8.75}, 12);
  for (int i = 0; i < 12; ++i)
    CHECK(scaled.values[i] == doctest::Approx(2.5 * base.values[i]));
}

TEST_CASE("polydisc_sequence") {
  auto p = polydisc_sequence(1.0, 2, 4);
  CHECK(p.values == std::vector<double>{1, 2, 3, 4});
  auto q = polydisc_sequence(3.0, 2, 2);
  CHECK(q.values == std::vector<double>{3, 6});
  CHECK_THROWS_AS(polydisc_sequence(-1.0, 2, 4), std::invalid_argument);
}

TEST_CASE("sys_index: plateau lengths") {
  CHECK(sys_index(ellipsoid_sequence({1, 1}, 6)).index == 2);
  CHECK_FALSE(sys_index(ellipsoid_sequence({1, 1}, 6)).is_lower_bound);
  CHECK(sys_index(ellipsoid_sequence({1, 2}, 6)).index == 1);
  CHECK(sys_index(polydisc_sequence(1, 2, 4)).index == 1);
  CHECK(sys_index(ellipsoid_sequence({1, 1, 1}, 8)).index == 3);
  // Plateau running to the end is only a lower bound.
  auto stub = ellipsoid_sequence({1, 1}, 2);
  auto idx = sys_index(stub);
  CHECK(idx.index == 2);
  CHECK(idx.is_lower_bound);
}

TEST_CASE("sys_index: ball plateau equals n for n <= 4") {
  for (int n = 1; n <= 4; ++n)
    for (double a : {0.3, 1.0, 2.5}) {
      std::vector<double> axes(n, a);
      CHECK(sys_index(ellipsoid_sequence(axes, 4 * n)).index == n);
    }
}

TEST_CASE("sys_index invariant under uniform scaling of the sequence") {
  auto seq = ellipsoid_sequence({1, 2}, 8);
  auto scaled = seq;
  for (auto& v : scaled.values) v *= 17.3;
  CHECK(sys_index(seq).index == sys_index(scaled).index);
}

TEST_CASE("is_generalized_zoll") {
  CHECK(is_generalized_zoll(ellipsoid_sequence({1, 1}, 6), 2));
  CHECK_FALSE(is_generalized_zoll(polydisc_sequence(1, 2, 4), 2));
  CHECK_FALSE(is_generalized_zoll(ellipsoid_sequence({1, 2}, 6), 2));
  CHECK_THROWS_AS(is_generalized_zoll(ellipsoid_sequence({1, 1}, 1), 2),
                  std::invalid_argument);
  // Consistency with the plateau: zoll <=> index >= n when the sequence is
  // long enough.
  for (auto axes : {std::vector<double>{1, 1}, {1, 2}, {2, 2, 2}}) {
    const int n = static_cast<int>(axes.size());
    auto seq = ellipsoid_sequence(axes, 3 * n + 1);
    CHECK(is_generalized_zoll(seq, n) == (sys_index(seq).index >= n));
  }
}

TEST_CASE("index_bound values") {
  CHECK(index_bound(2, BoundFlavor::General) == 32);
  CHECK(index_bound(2, BoundFlavor::CentrallySymmetric) == 8);
  CHECK(index_bound(3, BoundFlavor::S1Invariant) == 3);
  CHECK(index_bound(2, BoundFlavor::S1Invariant) == 2);
  CHECK(index_bound(5, BoundFlavor::UniquenessOfSystoles) == 5);
}

TEST_CASE("systolic_ratio: ball normalization and homogeneity") {
  // Normal-form ball B(a) has volume a^n/n!; ratio 1.
  CHECK(systolic_ratio(1.0, 0.5, 2) == doctest::Approx(1.0));
  CHECK(systolic_ratio(3.0, 27.0 / 6.0, 3) == doctest::Approx(1.0));
  // B_inf x B_1: c1 = 4, volume 8, n = 2.
  CHECK(systolic_ratio(4.0, 8.0, 2) == doctest::Approx(1.0));
  // Doubling c1 at fixed volume multiplies by 2^n.
  CHECK(systolic_ratio(2.0, 0.5, 2) == doctest::Approx(4.0));
  CHECK_THROWS_AS(systolic_ratio(1.0, 0.0, 2), std::invalid_argument);
}

TEST_CASE("c1_numeric tags the solver value") {
  const Body ball = make_ellipsoid({1, 1});
  SolveConfig cfg;
  cfg.starts = 3;
  cfg.seed = 2;
  CHECK(c1_numeric(ball, cfg) == doctest::Approx(1.0).epsilon(0.01));
}
