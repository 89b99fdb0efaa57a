#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace capsys {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Coordinate convention used throughout: a point of R^{2n} is stored in the
// split layout v = (x_1..x_n, y_1..y_n); the j-th symplectic plane is the
// coordinate pair (v[j], v[n+j]).  The complex structure acts per plane as
// (x, y) |-> (-y, x), i.e. J0 v = (-y-block, x-block).
inline Vec j0_apply(const Vec& v) {
  const Eigen::Index n = v.size() / 2;
  Vec out(v.size());
  out.head(n) = -v.tail(n);
  out.tail(n) = v.head(n);
  return out;
}

inline Vec j0_apply_inv(const Vec& v) {  // J0^T = -J0
  const Eigen::Index n = v.size() / 2;
  Vec out(v.size());
  out.head(n) = v.tail(n);
  out.tail(n) = -v.head(n);
  return out;
}

// Symplectic form omega(u, v) = <J0 u, v> = sum_j (u_x v_y - u_y v_x)_j.
inline double symplectic_form(const Vec& u, const Vec& v) {
  const Eigen::Index n = u.size() / 2;
  return u.head(n).dot(v.tail(n)) - u.tail(n).dot(v.head(n));
}

// e^{theta J0} v: rotation by theta in every symplectic plane.
inline Vec rotate_planes(const Vec& v, double theta) {
  const Eigen::Index n = v.size() / 2;
  const double c = std::cos(theta), s = std::sin(theta);
  Vec out(v.size());
  out.head(n) = c * v.head(n) - s * v.tail(n);
  out.tail(n) = s * v.head(n) + c * v.tail(n);
  return out;
}

inline void require_dim(const Vec& v, int dim, const char* where) {
  if (v.size() != dim)
    throw std::invalid_argument(std::string(where) + ": expected dimension " +
                                std::to_string(dim) + ", got " +
                                std::to_string(v.size()));
}

}  // namespace capsys
