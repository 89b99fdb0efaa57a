#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "capsys/linalg.hpp"

namespace capsys {

// Outward facet inequality <normal, x> <= offset with |normal| = 1.
struct Facet {
  Vec normal;
  double offset;
};

// All facet-supporting hyperplanes of conv(points) in R^d, found by brute
// force over d-subsets.  Intended for desk-scale vertex counts (<= ~48).
// Throws std::invalid_argument if the points do not affinely span R^d.
std::vector<Facet> enumerate_facets(const std::vector<Vec>& points);

// Chebyshev center of the polytope {x : <a_f, x> <= b_f}: the center of the
// largest inscribed ball, via a small dense LP.  `interior_hint` must be a
// strictly feasible point (e.g. the vertex centroid).
struct ChebyshevResult {
  Vec center;
  double radius;
};
ChebyshevResult chebyshev_center(const std::vector<Facet>& facets,
                                 const Vec& interior_hint);

// Maximize c^T z subject to A z <= b with b > 0 componentwise (the origin is
// strictly feasible), z free.  Dense primal simplex with Bland fallback.
// Returns nullopt when unbounded.
std::optional<Vec> simplex_maximize(const Mat& A, const Vec& b, const Vec& c);

// Euclidean distance from p to conv(generators), and the nearest point.
// Wolfe's minimum-norm-point algorithm; exact up to round-off in finitely
// many steps for the small generator sets used here.
struct HullDistance {
  double distance;
  Vec nearest;
};
HullDistance distance_to_hull(const Vec& p, const std::vector<Vec>& generators);

// Convex-position angular order of 2D points around the origin (which must be
// interior).  Used for polygon areas and plot outlines.
std::vector<int> polygon_ccw_order(const std::vector<Vec>& points);

// Area of the convex hull of 2D points containing the origin.
double polygon_area(const std::vector<Vec>& points);

}  // namespace capsys
