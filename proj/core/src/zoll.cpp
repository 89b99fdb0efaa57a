#include "capsys/zoll.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace capsys {

namespace {

// Value of gamma(t - theta) by periodic linear interpolation.
Vec shifted_sample(const TimeLoop& g, int j, double theta) {
  const int M = g.grid();
  double t = static_cast<double>(j) / M - theta;
  t -= std::floor(t);
  const double pos = t * M;
  const int a = static_cast<int>(pos) % M;
  const int b = (a + 1) % M;
  const double frac = pos - std::floor(pos);
  return (1.0 - frac) * g.samples[a] + frac * g.samples[b];
}

double sup_distance_at(const TimeLoop& g1, const TimeLoop& g2, double theta) {
  double d = 0.0;
  for (int j = 0; j < g1.grid(); ++j)
    d = std::max(d, (g1.samples[j] - shifted_sample(g2, j, theta)).lpNorm<Eigen::Infinity>());
  return d;
}

TimeLoop resample(const TimeLoop& g, int M) {
  if (g.grid() == M) return g;
  TimeLoop out;
  out.dim = g.dim;
  out.samples.resize(M);
  for (int j = 0; j < M; ++j) out.samples[j] = shifted_sample(g, 0, -static_cast<double>(j) / M);
  return out;
}

struct DSU {
  std::vector<int> parent;
  explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

FourierLoop gauge_fix(const FourierLoop& x) {
  const int n = x.dim / 2;
  // Pick the alignment mode: lowest |k| with a nonzero coefficient.
  int kref = 0;
  for (int k = 1; k <= x.modes && kref == 0; ++k) {
    if (x.at(k).norm() > 1e-14) kref = k;
    else if (x.at(-k).norm() > 1e-14) kref = -k;
  }
  if (kref == 0) return x;
  // First plane of xhat(kref) with a nonzero pair; zero its angle.
  const auto c = x.at(kref);
  for (int p = 0; p < n; ++p) {
    const double re = c(p), im = c(n + p);
    const double r = std::hypot(re, im);
    if (r > 1e-14) {
      // The shift rotates xhat(k) by -2 pi k theta; pick theta so the pair
      // lands on the positive first coordinate.
      const double ang = std::atan2(im, re);
      const double theta = ang / (2.0 * M_PI * kref);
      return phase_shift(x, theta);
    }
  }
  return x;
}

double loop_distance(const TimeLoop& g1, const TimeLoop& g2) {
  const int M = std::max(g1.grid(), g2.grid());
  const TimeLoop a = resample(g1, M);
  const TimeLoop b = resample(g2, M);

  const int coarse = 64;
  double best_theta = 0.0, best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < coarse; ++s) {
    const double theta = static_cast<double>(s) / coarse;
    const double d = sup_distance_at(a, b, theta);
    if (d < best) {
      best = d;
      best_theta = theta;
    }
  }
  // Golden-section refinement around the best coarse shift.
  double lo = best_theta - 1.0 / coarse, hi = best_theta + 1.0 / coarse;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = sup_distance_at(a, b, x1), f2 = sup_distance_at(a, b, x2);
  for (int it = 0; it < 40; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = sup_distance_at(a, b, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = sup_distance_at(a, b, x2);
    }
  }
  return std::min(best, std::min(f1, f2));
}

std::vector<SystoleCluster> cluster(const std::vector<SystoleResult>& results,
                                    double tol) {
  const int m = static_cast<int>(results.size());
  std::vector<SystoleCluster> out;
  if (m == 0) return out;

  Mat dist = Mat::Zero(m, m);
  DSU dsu(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      dist(i, j) = dist(j, i) = loop_distance(results[i].loop, results[j].loop);
      if (dist(i, j) <= tol) dsu.unite(i, j);
    }

  std::vector<std::vector<int>> groups;
  std::vector<int> root_of(m, -1);
  for (int i = 0; i < m; ++i) {
    const int r = dsu.find(i);
    bool found = false;
    for (size_t g = 0; g < groups.size(); ++g)
      if (dsu.find(groups[g][0]) == r) {
        groups[g].push_back(i);
        found = true;
        break;
      }
    if (!found) groups.push_back({i});
    (void)root_of;
  }

  for (auto& g : groups) {
    SystoleCluster c;
    int rep = g[0];
    for (int i : g)
      if (results[i].T < results[rep].T) rep = i;
    c.representative = results[rep];
    c.members = static_cast<int>(g.size());
    c.member_indices = g;
    double spread = 0.0;
    for (int i : g) spread = std::max(spread, dist(std::min(i, rep), std::max(i, rep)));
    c.spread = spread;
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const SystoleCluster& a, const SystoleCluster& b) {
    if (a.representative.T != b.representative.T)
      return a.representative.T < b.representative.T;
    return a.members > b.members;
  });
  return out;
}

CoverageResult ev0_coverage(const std::vector<SystoleResult>& results,
                            const Body& body, double eps, int boundary_samples,
                            std::uint64_t seed) {
  if (!(eps > 0.0)) throw std::invalid_argument("ev0_coverage: eps must be > 0");
  CoverageResult out;
  std::vector<const TimeLoop*> loops;
  for (const auto& r : results)
    if (r.converged) loops.push_back(&r.loop);
  if (loops.empty()) {
    out.no_converged_results = true;
    return out;
  }

  std::mt19937_64 gen(seed);
  auto normal = [&]() {
    double u1 = (gen() >> 11) * 0x1.0p-53, u2 = (gen() >> 11) * 0x1.0p-53;
    while (u1 <= 1e-300) u1 = (gen() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };

  const double eps2 = eps * eps;
  int hit = 0;
  for (int s = 0; s < boundary_samples; ++s) {
    Vec dir(body.dim());
    for (int i = 0; i < body.dim(); ++i) dir(i) = normal();
    const double g2 = body.gauge2(dir);
    if (g2 < 1e-300) {
      continue;
    }
    const Vec p = dir / std::sqrt(g2);
    bool close = false;
    for (const auto* lp : loops) {
      for (const auto& q : lp->samples)
        if ((p - q).squaredNorm() <= eps2) {
          close = true;
          break;
        }
      if (close) break;
    }
    if (close) ++hit;
  }
  out.fraction = static_cast<double>(hit) / boundary_samples;
  return out;
}

bool uniqueness_probe(const std::vector<SystoleResult>& results,
                      double point_tol, double loop_tol) {
  if (results.size() < 2)
    throw std::invalid_argument("uniqueness_probe: need at least 2 results");
  const int m = static_cast<int>(results.size());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      double closest = std::numeric_limits<double>::infinity();
      for (const auto& p : results[i].loop.samples) {
        for (const auto& q : results[j].loop.samples)
          closest = std::min(closest, (p - q).norm());
        if (closest <= point_tol) break;
      }
      if (closest > point_tol) continue;
      if (loop_distance(results[i].loop, results[j].loop) > loop_tol) return false;
    }
  }
  return true;
}

}  // namespace capsys
