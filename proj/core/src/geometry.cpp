#include "capsys/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace capsys {
namespace detail {

namespace {

Mat j0_matrix(int dim) {
  const int n = dim / 2;
  Mat J = Mat::Zero(dim, dim);
  J.block(0, n, n, n) = -Mat::Identity(n, n);
  J.block(n, 0, n, n) = Mat::Identity(n, n);
  return J;
}

// Normal-form parameters of {x^T A x <= 1}: the paired imaginary eigenvalue
// magnitudes lambda_i of J0 A (computed as singular values of the
// antisymmetric A^{1/2} J0 A^{1/2}, which come doubled), with a_i = pi/lambda_i.
std::vector<double> williamson_axes(const Mat& A) {
  Eigen::SelfAdjointEigenSolver<Mat> es(A);
  const Mat sq = es.operatorSqrt();
  const Mat S = sq * j0_matrix(static_cast<int>(A.rows())) * sq;
  Eigen::JacobiSVD<Mat> svd(S);
  const Vec sv = svd.singularValues();  // descending, each lambda twice
  std::vector<double> axes;
  for (int i = 0; i < sv.size(); i += 2) axes.push_back(M_PI / sv(i));
  std::sort(axes.begin(), axes.end());
  return axes;
}

}  // namespace

struct BodyNode {
  virtual ~BodyNode() = default;
  virtual int dim() const = 0;
  virtual BodyKind kind() const = 0;
  virtual double gauge2(const Vec& x) const = 0;
  virtual Vec subgrad_gauge2(const Vec& x) const = 0;
  virtual std::vector<Vec> gauge2_generators(const Vec& x, double atol) const = 0;
  virtual double support(const Vec& u) const = 0;
  virtual Vec support_point(const Vec& u) const = 0;
  virtual double support_smooth(const Vec& u, double tau) const = 0;
  // Gradient of the smoothed support (a boundary point for tau = 0).
  virtual Vec support_point_smooth(const Vec& u, double tau) const = 0;
  virtual bool symmetric() const = 0;
  virtual bool smooth() const = 0;
  virtual double diameter() const = 0;
  virtual std::optional<double> volume() const = 0;
  virtual std::optional<std::vector<Vec>> vertices() const = 0;
  virtual std::optional<std::vector<double>> normal_form_axes() const = 0;
  virtual Vec stored_offset() const = 0;
};

using NodePtr = std::shared_ptr<const BodyNode>;

// ---------------------------------------------------------------------------
// Ellipsoid (stored centered; the construction offset lives in offset_).

struct EllipsoidNode final : BodyNode {
  Mat A, Ainv;
  std::optional<std::vector<double>> axes;
  Vec offset_;

  EllipsoidNode(const Mat& shape, std::optional<std::vector<double>> ax, Vec off)
      : A(shape), Ainv(shape.inverse()), axes(std::move(ax)), offset_(std::move(off)) {}

  int dim() const override { return static_cast<int>(A.rows()); }
  BodyKind kind() const override { return BodyKind::Ellipsoid; }
  double gauge2(const Vec& x) const override { return x.dot(A * x); }
  Vec subgrad_gauge2(const Vec& x) const override { return 2.0 * (A * x); }
  std::vector<Vec> gauge2_generators(const Vec& x, double) const override {
    return {2.0 * (A * x)};
  }
  double support(const Vec& u) const override { return std::sqrt(u.dot(Ainv * u)); }
  Vec support_point(const Vec& u) const override {
    const double h = support(u);
    if (h <= 0.0) return Vec::Zero(dim());
    return (Ainv * u) / h;
  }
  double support_smooth(const Vec& u, double) const override { return support(u); }
  Vec support_point_smooth(const Vec& u, double) const override {
    return support_point(u);
  }
  bool symmetric() const override { return true; }
  bool smooth() const override { return true; }
  double diameter() const override {
    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    return 2.0 / std::sqrt(es.eigenvalues().minCoeff());
  }
  std::optional<double> volume() const override {
    const int n = dim() / 2;
    double ball = std::pow(M_PI, n);  // vol of unit ball in R^{2n} = pi^n / n!
    for (int k = 2; k <= n; ++k) ball /= k;
    return ball / std::sqrt(A.determinant());
  }
  std::optional<std::vector<Vec>> vertices() const override { return std::nullopt; }
  std::optional<std::vector<double>> normal_form_axes() const override {
    if (axes) return axes;
    return williamson_axes(A);
  }
  Vec stored_offset() const override { return offset_; }
};

// ---------------------------------------------------------------------------
// V-polytope (vertices and outward facets, stored centered).

struct VPolytopeNode final : BodyNode {
  std::vector<Vec> verts;
  std::vector<Facet> facets;
  bool symmetric_ = false;
  Vec offset_;
  int dim_;

  explicit VPolytopeNode(const std::vector<Vec>& input) {
    if (input.empty()) throw std::invalid_argument("vpolytope: no vertices");
    dim_ = static_cast<int>(input[0].size());
    for (const auto& v : input)
      if (v.size() != dim_) throw std::invalid_argument("vpolytope: mixed dimensions");

    std::vector<Facet> raw;
    if (dim_ == 1) {
      double lo = input[0](0), hi = input[0](0);
      for (const auto& v : input) {
        lo = std::min(lo, v(0));
        hi = std::max(hi, v(0));
      }
      if (hi - lo < 1e-12) throw std::invalid_argument("vpolytope: degenerate segment");
      raw.push_back({Vec::Constant(1, 1.0), hi});
      raw.push_back({Vec::Constant(1, -1.0), -lo});
    } else {
      raw = enumerate_facets(input);
    }

    Vec centroid = Vec::Zero(dim_);
    for (const auto& v : input) centroid += v;
    centroid /= static_cast<double>(input.size());
    const auto cheb = chebyshev_center(raw, centroid);
    offset_ = cheb.center;

    verts.reserve(input.size());
    for (const auto& v : input) verts.push_back(v - offset_);
    facets.reserve(raw.size());
    for (const auto& f : raw)
      facets.push_back({f.normal, f.offset - f.normal.dot(offset_)});
    for (const auto& f : facets)
      if (f.offset <= 0.0)
        throw std::invalid_argument("vpolytope: empty interior after recentering");

    symmetric_ = true;
    for (const auto& v : verts) {
      bool has_neg = false;
      for (const auto& w : verts)
        if ((v + w).lpNorm<Eigen::Infinity>() < 1e-9) {
          has_neg = true;
          break;
        }
      if (!has_neg) {
        symmetric_ = false;
        break;
      }
    }
  }

  int dim() const override { return dim_; }
  BodyKind kind() const override { return BodyKind::VPolytope; }

  double gauge(const Vec& x) const {
    double g = 0.0;
    for (const auto& f : facets) g = std::max(g, f.normal.dot(x) / f.offset);
    return g;
  }
  double gauge2(const Vec& x) const override {
    const double g = gauge(x);
    return g * g;
  }
  Vec subgrad_gauge2(const Vec& x) const override {
    // Lowest-index active facet.
    double g = 0.0;
    int best = -1;
    for (int f = 0; f < static_cast<int>(facets.size()); ++f) {
      const double v = facets[f].normal.dot(x) / facets[f].offset;
      if (v > g) {
        g = v;
        best = f;
      }
    }
    if (best < 0) return Vec::Zero(dim_);
    return (2.0 * g / facets[best].offset) * facets[best].normal;
  }
  std::vector<Vec> gauge2_generators(const Vec& x, double atol) const override {
    const double g = gauge(x);
    if (g <= 0.0) return {Vec::Zero(dim_)};
    std::vector<Vec> gens;
    const double cut = g * (1.0 - atol) - 1e-12;
    for (const auto& f : facets)
      if (f.normal.dot(x) / f.offset >= cut)
        gens.push_back((2.0 * g / f.offset) * f.normal);
    return gens;
  }
  double support(const Vec& u) const override {
    double h = verts[0].dot(u);
    for (size_t i = 1; i < verts.size(); ++i) h = std::max(h, verts[i].dot(u));
    return h;
  }
  Vec support_point(const Vec& u) const override {
    int best = 0;
    double h = verts[0].dot(u);
    for (int i = 1; i < static_cast<int>(verts.size()); ++i) {
      const double v = verts[i].dot(u);
      if (v > h) {
        h = v;
        best = i;
      }
    }
    return verts[best];
  }
  double support_smooth(const Vec& u, double tau) const override {
    if (tau <= 0.0) return support(u);
    const double m = support(u);
    double s = 0.0;
    for (const auto& v : verts) s += std::exp((v.dot(u) - m) / tau);
    return m + tau * std::log(s);
  }
  Vec support_point_smooth(const Vec& u, double tau) const override {
    if (tau <= 0.0) return support_point(u);
    const double m = support(u);
    double s = 0.0;
    Vec p = Vec::Zero(dim_);
    for (const auto& v : verts) {
      const double w = std::exp((v.dot(u) - m) / tau);
      s += w;
      p += w * v;
    }
    return p / s;
  }
  bool symmetric() const override { return symmetric_; }
  bool smooth() const override { return false; }
  double diameter() const override {
    double d = 0.0;
    for (size_t i = 0; i < verts.size(); ++i)
      for (size_t j = i + 1; j < verts.size(); ++j)
        d = std::max(d, (verts[i] - verts[j]).norm());
    return d;
  }
  std::optional<double> volume() const override {
    if (dim_ == 2) return polygon_area(verts);
    return std::nullopt;
  }
  std::optional<std::vector<Vec>> vertices() const override { return verts; }
  std::optional<std::vector<double>> normal_form_axes() const override {
    return std::nullopt;
  }
  Vec stored_offset() const override { return offset_; }
};

// ---------------------------------------------------------------------------
// Lagrangian product P x Q: gauge is the max of the factor gauges, support
// the sum of the factor supports.

struct ProductNode final : BodyNode {
  std::shared_ptr<const VPolytopeNode> P, Q;
  int n;

  ProductNode(std::shared_ptr<const VPolytopeNode> p,
              std::shared_ptr<const VPolytopeNode> q)
      : P(std::move(p)), Q(std::move(q)), n(P->dim()) {
    if (P->dim() != Q->dim())
      throw std::invalid_argument("lagrangian_product: factor dimensions differ");
  }

  int dim() const override { return 2 * n; }
  BodyKind kind() const override { return BodyKind::LagrangianProduct; }

  double gauge2(const Vec& v) const override {
    return std::max(P->gauge2(v.head(n)), Q->gauge2(v.tail(n)));
  }
  Vec subgrad_gauge2(const Vec& v) const override {
    const double gp = P->gauge2(v.head(n)), gq = Q->gauge2(v.tail(n));
    Vec out = Vec::Zero(2 * n);
    if (gp >= gq)  // x-factor wins ties
      out.head(n) = P->subgrad_gauge2(v.head(n));
    else
      out.tail(n) = Q->subgrad_gauge2(v.tail(n));
    return out;
  }
  std::vector<Vec> gauge2_generators(const Vec& v, double atol) const override {
    const double gp = P->gauge2(v.head(n)), gq = Q->gauge2(v.tail(n));
    const double H = std::max(gp, gq);
    std::vector<Vec> gens;
    const double cut = H * (1.0 - atol) - 1e-12;
    if (gp >= cut)
      for (const auto& g : P->gauge2_generators(v.head(n), atol)) {
        Vec e = Vec::Zero(2 * n);
        e.head(n) = g;
        gens.push_back(e);
      }
    if (gq >= cut)
      for (const auto& g : Q->gauge2_generators(v.tail(n), atol)) {
        Vec e = Vec::Zero(2 * n);
        e.tail(n) = g;
        gens.push_back(e);
      }
    if (gens.empty()) gens.push_back(Vec::Zero(2 * n));
    return gens;
  }
  double support(const Vec& u) const override {
    return P->support(u.head(n)) + Q->support(u.tail(n));
  }
  Vec support_point(const Vec& u) const override {
    Vec out(2 * n);
    out.head(n) = P->support_point(u.head(n));
    out.tail(n) = Q->support_point(u.tail(n));
    return out;
  }
  double support_smooth(const Vec& u, double tau) const override {
    return P->support_smooth(u.head(n), tau) + Q->support_smooth(u.tail(n), tau);
  }
  Vec support_point_smooth(const Vec& u, double tau) const override {
    Vec out(2 * n);
    out.head(n) = P->support_point_smooth(u.head(n), tau);
    out.tail(n) = Q->support_point_smooth(u.tail(n), tau);
    return out;
  }
  bool symmetric() const override { return P->symmetric() && Q->symmetric(); }
  bool smooth() const override { return false; }
  double diameter() const override {
    return std::hypot(P->diameter(), Q->diameter());
  }
  std::optional<double> volume() const override {
    auto vp = P->volume(), vq = Q->volume();
    if (vp && vq) return *vp * *vq;
    return std::nullopt;
  }
  std::optional<std::vector<Vec>> vertices() const override {
    std::vector<Vec> out;
    for (const auto& p : P->verts)
      for (const auto& q : Q->verts) {
        Vec v(2 * n);
        v.head(n) = p;
        v.tail(n) = q;
        out.push_back(v);
      }
    return out;
  }
  std::optional<std::vector<double>> normal_form_axes() const override {
    return std::nullopt;
  }
  Vec stored_offset() const override {
    Vec off(2 * n);
    off.head(n) = P->stored_offset();
    off.tail(n) = Q->stored_offset();
    return off;
  }
};

// ---------------------------------------------------------------------------
// scale(K, lambda): support lambda*h, gauge2 H/lambda^2.

struct ScaledNode final : BodyNode {
  NodePtr inner;
  double lam;

  ScaledNode(NodePtr in, double l) : inner(std::move(in)), lam(l) {}

  int dim() const override { return inner->dim(); }
  BodyKind kind() const override { return BodyKind::Scaled; }
  double gauge2(const Vec& x) const override { return inner->gauge2(x) / (lam * lam); }
  Vec subgrad_gauge2(const Vec& x) const override {
    return inner->subgrad_gauge2(x) / (lam * lam);
  }
  std::vector<Vec> gauge2_generators(const Vec& x, double atol) const override {
    auto gens = inner->gauge2_generators(x, atol);
    for (auto& g : gens) g /= lam * lam;
    return gens;
  }
  double support(const Vec& u) const override { return lam * inner->support(u); }
  Vec support_point(const Vec& u) const override {
    return lam * inner->support_point(u);
  }
  double support_smooth(const Vec& u, double tau) const override {
    return lam * inner->support_smooth(u, tau / lam);
  }
  Vec support_point_smooth(const Vec& u, double tau) const override {
    return lam * inner->support_point_smooth(u, tau / lam);
  }
  bool symmetric() const override { return inner->symmetric(); }
  bool smooth() const override { return inner->smooth(); }
  double diameter() const override { return lam * inner->diameter(); }
  std::optional<double> volume() const override {
    auto v = inner->volume();
    if (v) return *v * std::pow(lam, inner->dim());
    return std::nullopt;
  }
  std::optional<std::vector<Vec>> vertices() const override {
    auto v = inner->vertices();
    if (!v) return std::nullopt;
    for (auto& p : *v) p *= lam;
    return v;
  }
  std::optional<std::vector<double>> normal_form_axes() const override {
    auto a = inner->normal_form_axes();
    if (!a) return std::nullopt;
    for (auto& x : *a) x *= lam * lam;
    return a;
  }
  Vec stored_offset() const override { return lam * inner->stored_offset(); }
};

// ---------------------------------------------------------------------------
// translate(K, v): support h + <v,u>; the gauge has no closed form in terms
// of the inner gauge and is solved to ~1e-14 by safeguarded Newton on
// H_inner(s*x - v) = 1 in s = 1/gauge.

struct TranslatedNode final : BodyNode {
  NodePtr inner;
  Vec shift;

  TranslatedNode(NodePtr in, Vec v) : inner(std::move(in)), shift(std::move(v)) {}

  int dim() const override { return inner->dim(); }
  BodyKind kind() const override { return BodyKind::Translated; }

  // Returns s with H_inner(s*x - v) = 1; gauge(x) = 1/s.
  double boundary_scale(const Vec& x) const {
    auto phi = [&](double s) { return inner->gauge2(s * x - shift) - 1.0; };
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 200 && phi(hi) < 0.0; ++i) {
      lo = hi;
      hi *= 2.0;
    }
    double s = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
      const Vec w = s * x - shift;
      const double f = inner->gauge2(w) - 1.0;
      if (f > 0.0) hi = s; else lo = s;
      const double df = inner->subgrad_gauge2(w).dot(x);
      double snew = (df > 0.0) ? s - f / df : 0.5 * (lo + hi);
      if (!(snew > lo && snew < hi)) snew = 0.5 * (lo + hi);
      if (std::abs(snew - s) <= 1e-16 * s) { s = snew; break; }
      s = snew;
      if (hi - lo <= 1e-16 * hi) break;
    }
    return s;
  }
  double gauge2(const Vec& x) const override {
    if (x.lpNorm<Eigen::Infinity>() == 0.0) return 0.0;
    const double g = 1.0 / boundary_scale(x);
    return g * g;
  }
  Vec subgrad_gauge2(const Vec& x) const override {
    if (x.lpNorm<Eigen::Infinity>() == 0.0) return Vec::Zero(dim());
    const double s = boundary_scale(x);
    const Vec w = s * x - shift;
    const Vec eta = inner->subgrad_gauge2(w);
    const double h = inner->support(eta) + eta.dot(shift);
    return (2.0 / (s * h)) * eta;
  }
  std::vector<Vec> gauge2_generators(const Vec& x, double atol) const override {
    if (x.lpNorm<Eigen::Infinity>() == 0.0) return {Vec::Zero(dim())};
    const double s = boundary_scale(x);
    const Vec w = s * x - shift;
    std::vector<Vec> gens;
    for (const auto& eta : inner->gauge2_generators(w, atol)) {
      const double h = inner->support(eta) + eta.dot(shift);
      gens.push_back((2.0 / (s * h)) * eta);
    }
    return gens;
  }
  double support(const Vec& u) const override {
    return inner->support(u) + shift.dot(u);
  }
  Vec support_point(const Vec& u) const override {
    return inner->support_point(u) + shift;
  }
  double support_smooth(const Vec& u, double tau) const override {
    return inner->support_smooth(u, tau) + shift.dot(u);
  }
  Vec support_point_smooth(const Vec& u, double tau) const override {
    return inner->support_point_smooth(u, tau) + shift;
  }
  bool symmetric() const override {
    return shift.lpNorm<Eigen::Infinity>() < 1e-14 && inner->symmetric();
  }
  bool smooth() const override { return inner->smooth(); }
  double diameter() const override { return inner->diameter(); }
  std::optional<double> volume() const override { return inner->volume(); }
  std::optional<std::vector<Vec>> vertices() const override {
    auto v = inner->vertices();
    if (!v) return std::nullopt;
    for (auto& p : *v) p += shift;
    return v;
  }
  std::optional<std::vector<double>> normal_form_axes() const override {
    return inner->normal_form_axes();
  }
  Vec stored_offset() const override { return inner->stored_offset(); }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Body facade.

Body::Body(std::shared_ptr<const detail::BodyNode> node) : node_(std::move(node)) {}

int Body::dim() const { return node_->dim(); }
BodyKind Body::kind() const { return node_->kind(); }

double Body::gauge2(const Vec& x) const {
  require_dim(x, dim(), "gauge2");
  return node_->gauge2(x);
}
Vec Body::subgrad_gauge2(const Vec& x) const {
  require_dim(x, dim(), "subgrad_gauge2");
  return node_->subgrad_gauge2(x);
}
std::vector<Vec> Body::subgrad_gauge2_generators(const Vec& x,
                                                 double activity_tol) const {
  require_dim(x, dim(), "subgrad_gauge2_generators");
  return node_->gauge2_generators(x, activity_tol);
}
double Body::support(const Vec& u) const {
  require_dim(u, dim(), "support");
  return node_->support(u);
}
double Body::conj(const Vec& u) const {
  require_dim(u, dim(), "conj");
  const double h = node_->support(u);
  return 0.25 * h * h;
}
Vec Body::subgrad_conj(const Vec& u) const {
  require_dim(u, dim(), "subgrad_conj");
  if (u.lpNorm<Eigen::Infinity>() == 0.0) return Vec::Zero(dim());
  return 0.5 * node_->support(u) * node_->support_point(u);
}
Vec Body::support_point(const Vec& u) const {
  require_dim(u, dim(), "support_point");
  return node_->support_point(u);
}
double Body::support_smooth(const Vec& u, double tau) const {
  require_dim(u, dim(), "support_smooth");
  return node_->support_smooth(u, tau);
}
double Body::conj_smooth(const Vec& u, double tau) const {
  require_dim(u, dim(), "conj_smooth");
  const double h = node_->support_smooth(u, tau);
  return 0.25 * h * h;
}
Vec Body::subgrad_conj_smooth(const Vec& u, double tau) const {
  require_dim(u, dim(), "subgrad_conj_smooth");
  if (tau <= 0.0) return subgrad_conj(u);
  return 0.5 * node_->support_smooth(u, tau) * node_->support_point_smooth(u, tau);
}
bool Body::centrally_symmetric() const { return node_->symmetric(); }
bool Body::smooth() const { return node_->smooth(); }
double Body::diameter() const { return node_->diameter(); }
std::optional<double> Body::volume() const { return node_->volume(); }
std::optional<std::vector<Vec>> Body::vertices() const { return node_->vertices(); }
std::optional<std::vector<double>> Body::normal_form_axes() const {
  return node_->normal_form_axes();
}
Vec Body::stored_offset() const { return node_->stored_offset(); }

// ---------------------------------------------------------------------------
// Constructors.

Body make_ellipsoid(const std::vector<double>& a) {
  if (a.empty()) throw std::invalid_argument("make_ellipsoid: empty axis list");
  for (double ai : a)
    if (!(ai > 0.0)) throw std::invalid_argument("make_ellipsoid: axes must be > 0");
  std::vector<double> axes = a;
  std::sort(axes.begin(), axes.end());
  const int n = static_cast<int>(axes.size());
  Vec diag(2 * n);
  for (int i = 0; i < n; ++i) diag(i) = diag(n + i) = M_PI / axes[i];
  return Body(std::make_shared<detail::EllipsoidNode>(Mat(diag.asDiagonal()), axes,
                                                      Vec::Zero(2 * n)));
}

Body make_ellipsoid(const Vec& center, const Mat& shape) {
  if (shape.rows() != shape.cols() || shape.rows() != center.size() ||
      shape.rows() % 2 != 0)
    throw std::invalid_argument("make_ellipsoid: bad shape/center dimensions");
  if ((shape - shape.transpose()).lpNorm<Eigen::Infinity>() > 1e-10)
    throw std::invalid_argument("make_ellipsoid: shape not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(shape);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("make_ellipsoid: shape not positive definite");
  return Body(std::make_shared<detail::EllipsoidNode>(shape, std::nullopt, center));
}

Body make_vpolytope(const std::vector<Vec>& vertices) {
  auto node = std::make_shared<detail::VPolytopeNode>(vertices);
  if (node->dim() % 2 != 0 || node->dim() < 2)
    throw std::invalid_argument("make_vpolytope: ambient dimension must be even");
  return Body(node);
}

Body make_lagrangian_product(const std::vector<Vec>& p_vertices,
                             const std::vector<Vec>& q_vertices) {
  auto p = std::make_shared<detail::VPolytopeNode>(p_vertices);
  auto q = std::make_shared<detail::VPolytopeNode>(q_vertices);
  return Body(std::make_shared<detail::ProductNode>(p, q));
}

Body scale(const Body& body, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("scale: lambda must be > 0");
  return Body(std::make_shared<detail::ScaledNode>(body.node(), lambda));
}

Body translate(const Body& body, const Vec& v) {
  require_dim(v, body.dim(), "translate");
  if (body.gauge2(-v) >= 1.0)
    throw std::invalid_argument("translate: origin leaves the interior");
  return Body(std::make_shared<detail::TranslatedNode>(body.node(), v));
}

Body make_bxb1() {
  std::vector<Vec> sq, di;
  for (double sx : {-1.0, 1.0})
    for (double sy : {-1.0, 1.0}) {
      Vec v(2);
      v << sx, sy;
      sq.push_back(v);
    }
  for (int i = 0; i < 4; ++i) {
    Vec v = Vec::Zero(2);
    v(i % 2) = (i < 2) ? 1.0 : -1.0;
    di.push_back(v);
  }
  return make_lagrangian_product(sq, di);
}

Body make_cube(int n) {
  const int d = 2 * n;
  std::vector<Vec> verts;
  for (int mask = 0; mask < (1 << d); ++mask) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = (mask >> i & 1) ? 1.0 : -1.0;
    verts.push_back(v);
  }
  return make_vpolytope(verts);
}

}  // namespace capsys
