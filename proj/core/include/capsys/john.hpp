#pragma once

#include <optional>
#include <vector>

#include "capsys/capacities.hpp"
#include "capsys/geometry.hpp"

namespace capsys {

struct JohnResult {
  Ellipsoid ellipsoid;
  int iterations = 0;
  double duality_gap = 0.0;
  double sandwich_factor = 0.0;  // 2n (general) or sqrt(2n) (symmetric)
  bool symmetric = false;
};

// (1+tol)-approximate minimal-volume enclosing ellipsoid of the points, by
// barycentric coordinate ascent on the dual log-det problem (Khachiyan).
// In symmetric mode the center is pinned at the origin.
JohnResult enclosing_ellipsoid(const std::vector<Vec>& points, double tol,
                               bool centrally_symmetric);

struct SandwichCheck {
  bool ok = false;
  double max_vertex_form = 0.0;           // max (p-c)^T A (p-c) over vertices
  std::optional<Vec> failing_direction;   // direction violating the inner containment
};

// Verifies E contains the body's vertices and the 1/(2n)- (or 1/sqrt(2n)-)
// shrunk ellipsoid fits inside the body, by support comparison on sampled
// directions.
SandwichCheck verify_sandwich(const Body& body, const JohnResult& result,
                              int directions = 1000, std::uint64_t seed = 7);

struct CapacityBoundReport {
  JohnResult john;
  std::vector<double> a_normal_form;  // normal-form semi-axes of E
  double c1_ellipsoid = 0.0;          // closed-form c_1(E), an upper bound for c_1(K)
  double c1_numeric_value = 0.0;
  bool bound_holds = false;           // c1_numeric <= c1_ellipsoid (within solver slack)
  long long index_bound_value = 0;
  BoundFlavor flavor = BoundFlavor::General;
};

// Runs the numeric c_1, the enclosing ellipsoid of the body's vertices (or
// the body's own ellipsoid), and reports the implied capacity/index bounds.
CapacityBoundReport capacity_bound_report(const Body& body, const SolveConfig& cfg,
                                          double john_tol = 1e-6, int threads = 0);

}  // namespace capsys
