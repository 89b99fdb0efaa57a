#include "capsys/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace capsys {

namespace {

// Next d-combination of indices in lexicographic order.
bool next_combination(std::vector<int>& idx, int m) {
  const int d = static_cast<int>(idx.size());
  for (int i = d - 1; i >= 0; --i) {
    if (idx[i] < m - d + i) {
      ++idx[i];
      for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Facet> enumerate_facets(const std::vector<Vec>& points) {
  if (points.empty()) throw std::invalid_argument("enumerate_facets: no points");
  const int d = static_cast<int>(points[0].size());
  const int m = static_cast<int>(points.size());
  if (m < d + 1)
    throw std::invalid_argument("enumerate_facets: too few points to span");

  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, p.lpNorm<Eigen::Infinity>());
  const double tol = 1e-9 * (1.0 + scale);

  // Affine span check.
  {
    Mat diff(m - 1, d);
    for (int i = 1; i < m; ++i) diff.row(i - 1) = (points[i] - points[0]).transpose();
    Eigen::FullPivLU<Mat> lu(diff);
    lu.setThreshold(1e-10);
    if (lu.rank() < d)
      throw std::invalid_argument("enumerate_facets: points do not affinely span R^d");
  }

  std::vector<Facet> facets;
  auto already_have = [&](const Vec& n, double b) {
    for (const auto& f : facets)
      if ((f.normal - n).lpNorm<Eigen::Infinity>() < 1e-9 &&
          std::abs(f.offset - b) < tol)
        return true;
    return false;
  };

  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  do {
    // Hyperplane through the d selected points: normal spans the null space
    // of the difference matrix.
    Mat diff(d - 1, d);
    for (int i = 1; i < d; ++i)
      diff.row(i - 1) = (points[idx[i]] - points[idx[0]]).transpose();
    Eigen::JacobiSVD<Mat> svd(diff, Eigen::ComputeFullV);
    if (d > 1 && svd.singularValues()(d - 2) < 1e-10 * (1.0 + scale)) continue;
    Vec n = svd.matrixV().col(d - 1);
    double b = n.dot(points[idx[0]]);

    bool all_below = true, all_above = true;
    for (const auto& p : points) {
      const double s = n.dot(p) - b;
      if (s > tol) all_below = false;
      if (s < -tol) all_above = false;
      if (!all_below && !all_above) break;
    }
    if (!all_below && !all_above) continue;
    if (all_above) {
      n = -n;
      b = -b;
    }
    if (!already_have(n, b)) facets.push_back({n, b});
  } while (next_combination(idx, m));

  if (facets.empty())
    throw std::invalid_argument("enumerate_facets: degenerate input");
  return facets;
}

std::optional<Vec> simplex_maximize(const Mat& A, const Vec& b, const Vec& c) {
  // Standard form with free variables split as z = p - q, p,q >= 0, and one
  // slack per row.  b > 0 makes the all-slack basis feasible.
  const int mrows = static_cast<int>(A.rows());
  const int nz = static_cast<int>(A.cols());
  const int nvar = 2 * nz + mrows;
  Mat T(mrows + 1, nvar + 1);
  T.setZero();
  for (int i = 0; i < mrows; ++i) {
    T.block(i, 0, 1, nz) = A.row(i);
    T.block(i, nz, 1, nz) = -A.row(i);
    T(i, 2 * nz + i) = 1.0;
    T(i, nvar) = b(i);
  }
  T.block(mrows, 0, 1, nz) = -c.transpose();
  T.block(mrows, nz, 1, nz) = c.transpose();

  std::vector<int> basis(mrows);
  for (int i = 0; i < mrows; ++i) basis[i] = 2 * nz + i;

  const double eps = 1e-11;
  const int max_pivots = 20000;
  for (int pivots = 0; pivots < max_pivots; ++pivots) {
    // Entering column: Dantzig, with Bland tie handling by lowest index.
    int enter = -1;
    double best = -eps;
    for (int j = 0; j < nvar; ++j) {
      if (T(mrows, j) < best) {
        best = T(mrows, j);
        enter = j;
      }
    }
    if (enter < 0) {
      Vec z = Vec::Zero(nz);
      for (int i = 0; i < mrows; ++i) {
        if (basis[i] < nz) z(basis[i]) += T(i, nvar);
        else if (basis[i] < 2 * nz) z(basis[i] - nz) -= T(i, nvar);
      }
      return z;
    }
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < mrows; ++i) {
      if (T(i, enter) > eps) {
        const double r = T(i, nvar) / T(i, enter);
        if (r < best_ratio - eps ||
            (r < best_ratio + eps && (leave < 0 || basis[i] < basis[leave]))) {
          best_ratio = r;
          leave = i;
        }
      }
    }
    if (leave < 0) return std::nullopt;  // unbounded
    T.row(leave) /= T(leave, enter);
    for (int i = 0; i <= mrows; ++i) {
      if (i == leave) continue;
      const double f = T(i, enter);
      if (f != 0.0) T.row(i) -= f * T.row(leave);
    }
    basis[leave] = enter;
  }
  throw std::runtime_error("simplex_maximize: pivot limit exceeded");
}

ChebyshevResult chebyshev_center(const std::vector<Facet>& facets,
                                 const Vec& interior_hint) {
  const int d = static_cast<int>(interior_hint.size());
  const int m = static_cast<int>(facets.size());
  // Variables (shift, r): <a_f, c0 + shift> + r <= b_f, maximize r.
  Mat A(m, d + 1);
  Vec b(m);
  for (int i = 0; i < m; ++i) {
    A.row(i).head(d) = facets[i].normal.transpose();
    A(i, d) = 1.0;
    b(i) = facets[i].offset - facets[i].normal.dot(interior_hint);
    if (b(i) <= 0.0)
      throw std::invalid_argument("chebyshev_center: hint not strictly interior");
  }
  Vec c = Vec::Zero(d + 1);
  c(d) = 1.0;
  auto z = simplex_maximize(A, b, c);
  if (!z) throw std::runtime_error("chebyshev_center: LP unbounded");
  ChebyshevResult res;
  res.center = interior_hint + z->head(d);
  res.radius = (*z)(d);
  return res;
}

HullDistance distance_to_hull(const Vec& p, const std::vector<Vec>& gens) {
  if (gens.empty()) throw std::invalid_argument("distance_to_hull: empty hull");
  const int m = static_cast<int>(gens.size());
  if (m == 1) return {(p - gens[0]).norm(), gens[0]};

  // Wolfe's minimum-norm-point on the shifted set {g - p}.
  std::vector<Vec> q(gens.size());
  for (int i = 0; i < m; ++i) q[i] = gens[i] - p;

  auto argmin_dot = [&](const Vec& w) {
    int best = 0;
    double bv = q[0].dot(w);
    for (int i = 1; i < m; ++i) {
      const double v = q[i].dot(w);
      if (v < bv - 1e-15) {
        bv = v;
        best = i;
      }
    }
    return best;
  };

  std::vector<int> corral{argmin_dot(Vec::Zero(p.size()))};
  // Start from the point of smallest norm.
  {
    int best = 0;
    for (int i = 1; i < m; ++i)
      if (q[i].squaredNorm() < q[best].squaredNorm()) best = i;
    corral = {best};
  }
  Vec lambda = Vec::Ones(1);
  Vec w = q[corral[0]];

  const double tol = 1e-14;
  for (int outer = 0; outer < 16 * m + 64; ++outer) {
    // Optimality: w already minimal over the hull?
    int j = argmin_dot(w);
    const double wn2 = w.squaredNorm();
    if (q[j].dot(w) > wn2 - tol * (1.0 + wn2)) break;
    if (std::find(corral.begin(), corral.end(), j) == corral.end()) {
      corral.push_back(j);
      Vec nl(lambda.size() + 1);
      nl << lambda, 0.0;
      lambda = nl;
    }

    for (int inner = 0; inner < 16 * m + 64; ++inner) {
      // Affine minimizer over the corral: solve for barycentric weights.
      const int k = static_cast<int>(corral.size());
      Mat G(k + 1, k + 1);
      Vec rhs = Vec::Zero(k + 1);
      for (int a = 0; a < k; ++a)
        for (int bidx = 0; bidx < k; ++bidx)
          G(a, bidx) = q[corral[a]].dot(q[corral[bidx]]);
      for (int a = 0; a < k; ++a) {
        G(a, k) = 1.0;
        G(k, a) = 1.0;
      }
      G(k, k) = 0.0;
      rhs(k) = 1.0;
      Vec sol = G.fullPivLu().solve(rhs);
      Vec mu = sol.head(k);

      if (mu.minCoeff() > -1e-13) {
        lambda = mu;
        break;
      }
      // Move toward the affine minimizer until a weight hits zero; drop it.
      double theta = 1.0;
      for (int a = 0; a < k; ++a) {
        if (mu(a) < lambda(a)) {
          const double t = lambda(a) / (lambda(a) - mu(a));
          theta = std::min(theta, t);
        }
      }
      lambda = (1.0 - theta) * lambda + theta * mu;
      int drop = -1;
      double small = 1e-12;
      for (int a = 0; a < k; ++a)
        if (lambda(a) < small) {
          small = lambda(a);
          drop = a;
        }
      if (drop < 0) break;
      corral.erase(corral.begin() + drop);
      Vec nl(lambda.size() - 1);
      int t = 0;
      for (int a = 0; a < k; ++a)
        if (a != drop) nl(t++) = lambda(a);
      lambda = nl.cwiseMax(0.0);
      const double s = lambda.sum();
      if (s > 0) lambda /= s;
    }

    w.setZero();
    for (size_t a = 0; a < corral.size(); ++a) w += lambda(a) * q[corral[a]];
  }

  HullDistance out;
  out.nearest = p + w;
  out.distance = w.norm();
  return out;
}

std::vector<int> polygon_ccw_order(const std::vector<Vec>& points) {
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ta = std::atan2(points[a](1), points[a](0));
    const double tb = std::atan2(points[b](1), points[b](0));
    if (ta != tb) return ta < tb;
    return points[a].squaredNorm() < points[b].squaredNorm();
  });
  return order;
}

double polygon_area(const std::vector<Vec>& points) {
  const auto order = polygon_ccw_order(points);
  double area = 0.0;
  const int m = static_cast<int>(order.size());
  for (int i = 0; i < m; ++i) {
    const Vec& a = points[order[i]];
    const Vec& b = points[order[(i + 1) % m]];
    area += a(0) * b(1) - b(0) * a(1);
  }
  return 0.5 * area;
}

}  // namespace capsys
