#include "capsys/john.hpp"

#include <cmath>
#include <random>

namespace capsys {

namespace {

// Normal-form semi-axes of {x^T A x <= 1} (duplicated singular values of the
// antisymmetric A^{1/2} J0 A^{1/2}, a_i = pi / lambda_i).
std::vector<double> normal_form_of_shape(const Mat& A) {
  const int d = static_cast<int>(A.rows());
  const int n = d / 2;
  Mat J = Mat::Zero(d, d);
  J.block(0, n, n, n) = -Mat::Identity(n, n);
  J.block(n, 0, n, n) = Mat::Identity(n, n);
  Eigen::SelfAdjointEigenSolver<Mat> es(A);
  const Mat sq = es.operatorSqrt();
  Eigen::JacobiSVD<Mat> svd(sq * J * sq);
  const Vec sv = svd.singularValues();
  std::vector<double> axes;
  for (int i = 0; i < sv.size(); i += 2) axes.push_back(M_PI / sv(i));
  std::sort(axes.begin(), axes.end());
  return axes;
}

}  // namespace

JohnResult enclosing_ellipsoid(const std::vector<Vec>& points, double tol,
                               bool centrally_symmetric) {
  if (!(tol > 0.0 && tol <= 1e-2))
    throw std::invalid_argument("enclosing_ellipsoid: tol must be in (0, 1e-2]");
  if (points.empty())
    throw std::invalid_argument("enclosing_ellipsoid: no points");
  const int d = static_cast<int>(points[0].size());
  const int m = static_cast<int>(points.size());

  // Lifted working points: q = p in symmetric mode, q = (p, 1) otherwise.
  const int D = centrally_symmetric ? d : d + 1;
  Mat Q(D, m);
  for (int i = 0; i < m; ++i) {
    Q.col(i).head(d) = points[i];
    if (!centrally_symmetric) Q(d, i) = 1.0;
  }
  {
    Eigen::FullPivLU<Mat> lu(Q * Q.transpose());
    lu.setThreshold(1e-12);
    if (lu.rank() < D)
      throw std::invalid_argument("enclosing_ellipsoid: points do not span");
  }

  Vec u = Vec::Constant(m, 1.0 / m);
  Mat Minv = (Q * u.asDiagonal() * Q.transpose()).inverse();
  JohnResult res;
  res.symmetric = centrally_symmetric;

  // Coordinate ascent with Wolfe-Atwood away steps (plain Frank-Wolfe ascent
  // has a sublinear tail and cannot reach 1e-6 gaps in reasonable time).
  const int max_iter = 100000;
  int it = 0;
  double gap = 0.0;
  for (; it < max_iter; ++it) {
    int jmax = 0, jmin = -1;
    double kmax = 0.0, kmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double k = Q.col(i).dot(Minv * Q.col(i));
      if (k > kmax) {
        kmax = k;
        jmax = i;
      }
      if (u(i) > 0.0 && k < kmin) {
        kmin = k;
        jmin = i;
      }
    }
    gap = kmax / D - 1.0;
    const double away_gap = 1.0 - kmin / D;
    if (gap <= tol && away_gap <= tol) break;

    int j = jmax;
    double beta = (kmax - D) / (D * (kmax - 1.0));
    if (away_gap > gap && jmin >= 0) {
      j = jmin;
      beta = (kmin - D) / (D * (kmin - 1.0));        // negative: move away
      beta = std::max(beta, -u(j) / (1.0 - u(j)));   // keep u >= 0
    }
    const double kj = Q.col(j).dot(Minv * Q.col(j));
    u *= (1.0 - beta);
    u(j) += beta;
    // Sherman-Morrison update of M^{-1}; refresh periodically for stability.
    if (it % 512 == 511) {
      Minv = (Q * u.asDiagonal() * Q.transpose()).inverse();
    } else {
      const Vec Mq = Minv * Q.col(j);
      Minv = (Minv - (beta / (1.0 - beta + beta * kj)) * (Mq * Mq.transpose())) /
             (1.0 - beta);
    }
  }
  if (gap > tol)
    throw std::runtime_error("enclosing_ellipsoid: iteration limit before tolerance");

  res.iterations = it;
  res.duality_gap = gap;
  const int n = d / 2;
  res.sandwich_factor = centrally_symmetric ? std::sqrt(2.0 * n) : 2.0 * n;

  if (centrally_symmetric) {
    const Mat M = Q * u.asDiagonal() * Q.transpose();
    res.ellipsoid.center = Vec::Zero(d);
    res.ellipsoid.shape = M.inverse() / d;
  } else {
    Vec c = Vec::Zero(d);
    for (int i = 0; i < m; ++i) c += u(i) * points[i];
    Mat S = Mat::Zero(d, d);
    for (int i = 0; i < m; ++i)
      S += u(i) * (points[i] - c) * (points[i] - c).transpose();
    res.ellipsoid.center = c;
    res.ellipsoid.shape = S.inverse() / d;
  }
  if (d % 2 == 0) res.ellipsoid.axes = normal_form_of_shape(res.ellipsoid.shape);
  return res;
}

SandwichCheck verify_sandwich(const Body& body, const JohnResult& result,
                              int directions, std::uint64_t seed) {
  SandwichCheck out;
  auto verts = body.vertices();
  if (!verts)
    throw std::invalid_argument("verify_sandwich: body has no vertex representation");

  const Mat& A = result.ellipsoid.shape;
  const Vec& c = result.ellipsoid.center;
  double maxform = 0.0;
  for (const auto& p : *verts)
    maxform = std::max(maxform, (p - c).dot(A * (p - c)));
  out.max_vertex_form = maxform;
  if (maxform > 1.0 + result.duality_gap + 1e-9) return out;

  const Mat Ainv = A.inverse();
  const double s = 1.0 / result.sandwich_factor;
  std::mt19937_64 gen(seed);
  auto normal = [&]() {
    // Box-Muller on pinned uniforms
    double u1 = (gen() >> 11) * 0x1.0p-53, u2 = (gen() >> 11) * 0x1.0p-53;
    while (u1 <= 1e-300) u1 = (gen() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  for (int k = 0; k < directions; ++k) {
    Vec dir(body.dim());
    for (int i = 0; i < body.dim(); ++i) dir(i) = normal();
    if (dir.norm() < 1e-12) continue;
    dir.normalize();
    const double h_shrunk = c.dot(dir) + s * std::sqrt(dir.dot(Ainv * dir));
    if (h_shrunk > body.support(dir) + 1e-9) {
      out.failing_direction = dir;
      return out;
    }
  }
  out.ok = true;
  return out;
}

CapacityBoundReport capacity_bound_report(const Body& body, const SolveConfig& cfg,
                                          double john_tol, int threads) {
  CapacityBoundReport rep;
  if (auto axes = body.normal_form_axes(); axes && !body.vertices()) {
    // Ellipsoid bodies are their own minimal enclosing ellipsoid; capacities
    // are translation invariant, so the center is reported at the origin.
    rep.john.ellipsoid.center = Vec::Zero(body.dim());
    rep.john.ellipsoid.axes = *axes;
    rep.john.duality_gap = 0.0;
    rep.john.symmetric = true;
    const int n = body.dim() / 2;
    rep.john.sandwich_factor = std::sqrt(2.0 * n);
    Vec diag(2 * n);
    for (int i = 0; i < n; ++i) diag(i) = diag(n + i) = M_PI / (*axes)[i];
    rep.john.ellipsoid.shape = Mat(diag.asDiagonal());
    rep.a_normal_form = *axes;
  } else {
    auto verts = body.vertices();
    if (!verts)
      throw std::invalid_argument(
          "capacity_bound_report: body is neither an ellipsoid nor polytopal");
    rep.john = enclosing_ellipsoid(*verts, john_tol, body.centrally_symmetric());
    rep.a_normal_form = *rep.john.ellipsoid.axes;
  }
  rep.c1_ellipsoid = rep.a_normal_form.front();
  rep.c1_numeric_value = c1_numeric(body, cfg, threads);
  rep.bound_holds = rep.c1_numeric_value <= rep.c1_ellipsoid * (1.0 + 0.02);
  rep.flavor = body.centrally_symmetric() ? BoundFlavor::CentrallySymmetric
                                          : BoundFlavor::General;
  rep.index_bound_value = index_bound(body.dim() / 2, rep.flavor);
  return rep;
}

}  // namespace capsys
