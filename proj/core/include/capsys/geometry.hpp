#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "capsys/convex.hpp"
#include "capsys/linalg.hpp"

namespace capsys {

enum class BodyKind { Ellipsoid, VPolytope, LagrangianProduct, Scaled, Translated };

// Center + positive-definite shape matrix: {x : (x-c)^T A (x-c) <= 1}.
// `axes`, when present, are the normal-form parameters a_1 <= ... <= a_n of
// E(a_1,...,a_n) = {z : sum pi |z_i|^2 / a_i <= 1}.
struct Ellipsoid {
  Vec center;
  Mat shape;
  std::optional<std::vector<double>> axes;
};

namespace detail {
struct BodyNode;
}

// Oracle bundle for a convex body in R^{2n} with the origin interior.
//
// H_K is the positively 2-homogeneous gauge with H_K^{-1}(1) = boundary,
// h_K the support function, and H*_K = h_K^2/4 its Fenchel conjugate.
// Bodies are immutable; every oracle is a pure function.
class Body {
 public:
  int dim() const;  // 2n
  BodyKind kind() const;

  double gauge2(const Vec& x) const;
  Vec subgrad_gauge2(const Vec& x) const;
  double support(const Vec& u) const;
  double conj(const Vec& u) const;
  Vec subgrad_conj(const Vec& u) const;
  // Boundary point achieving the support: argmax_{y in K} <u, y>.
  Vec support_point(const Vec& u) const;

  // Smoothed support/conjugate: every vertex max is replaced by log-sum-exp
  // with temperature tau (tau = 0 gives the exact nonsmooth values).  The
  // smoothed support dominates the exact one and converges as tau -> 0;
  // subgrad_conj_smooth is the exact gradient of conj_smooth for tau > 0.
  double support_smooth(const Vec& u, double tau) const;
  double conj_smooth(const Vec& u, double tau) const;
  Vec subgrad_conj_smooth(const Vec& u, double tau) const;

  // Extreme points of the subdifferential of H_K at x (active-facet
  // generators for polytope-like kinds, the gradient for ellipsoids).
  // activity_tol relaxes the active-set test: facets and product factors
  // within a relative activity_tol of the max count as active, giving the
  // eps-subdifferential certificate appropriate for approximate boundary
  // loops.
  std::vector<Vec> subgrad_gauge2_generators(const Vec& x,
                                             double activity_tol = 1e-9) const;

  bool contains(const Vec& x) const { return gauge2(x) <= 1.0 + 1e-12; }
  bool centrally_symmetric() const;
  bool smooth() const;  // true iff the body tree is ellipsoid-only
  double diameter() const;
  std::optional<double> volume() const;
  // Vertex set when the body is polytopal (vpolytope, products, and their
  // scalings/translations).
  std::optional<std::vector<Vec>> vertices() const;
  // Normal-form semi-axes when the body is an ellipsoid up to scaling and
  // translation; capacity sequences exist in closed form exactly then.
  std::optional<std::vector<double>> normal_form_axes() const;
  // Accumulated recentering/translation offset: the body as constructed is
  // `original - offset`, so results can be reported for the original placement.
  Vec stored_offset() const;

  std::shared_ptr<const detail::BodyNode> node() const { return node_; }
  explicit Body(std::shared_ptr<const detail::BodyNode> node);

 private:
  std::shared_ptr<const detail::BodyNode> node_;
};

// Constructors.  All of them leave the origin in the interior: vpolytopes are
// recentered at their Chebyshev center, ellipsoids at their given center,
// Lagrangian-product factors at their own Chebyshev centers; the applied
// offset is recorded (see Body::stored_offset).
Body make_ellipsoid(const std::vector<double>& a);
Body make_ellipsoid(const Vec& center, const Mat& shape);
Body make_vpolytope(const std::vector<Vec>& vertices);
// K = P x Q with P in the x-block and Q in the y-block, both polytopes in R^n.
Body make_lagrangian_product(const std::vector<Vec>& p_vertices,
                             const std::vector<Vec>& q_vertices);
Body scale(const Body& body, double lambda);
// Requires the origin to stay interior (gauge2(-v) < 1 on the inner body).
Body translate(const Body& body, const Vec& v);

// Convenience: the Lagrangian product of [-1,1]^2 and the 1-norm unit ball.
Body make_bxb1();
// [-1,1]^{2n} as a vpolytope.
Body make_cube(int n);

}  // namespace capsys
