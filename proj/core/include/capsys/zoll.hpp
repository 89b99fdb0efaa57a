#pragma once

#include <cstdint>
#include <vector>

#include "capsys/geometry.hpp"
#include "capsys/solver.hpp"

namespace capsys {

// Canonical S^1-orbit representative: the phase shift maximizing the first
// coordinate of xhat(1) (ties cascade to the next coordinate; a vanishing
// first mode falls back to the lowest nonvanishing |k|).  Idempotent.
FourierLoop gauge_fix(const FourierLoop& x);

// min over phase shifts of the uniform distance ||g1 - theta.g2||_inf
// (64 coarse grid shifts refined by golden-section search on a linear
// interpolation).  Loops are resampled to a common grid if needed.
double loop_distance(const TimeLoop& g1, const TimeLoop& g2);

struct SystoleCluster {
  SystoleResult representative;  // smallest-action member
  int members = 0;
  double spread = 0.0;  // max phase-aligned uniform distance to representative
  std::vector<int> member_indices;
};

// Single-linkage clustering of the loops at cut `tol` (union-find over the
// pairwise loop_distance matrix), sorted by action then size.  Connected
// families merge by chaining, so a cluster's spread may exceed tol.
std::vector<SystoleCluster> cluster(const std::vector<SystoleResult>& results,
                                    double tol);

struct CoverageResult {
  double fraction = 0.0;
  bool no_converged_results = false;
};

// Fraction of quasi-uniform boundary samples (normalized Gaussian directions
// scaled by 1/sqrt(gauge2)) within distance eps of the union of all result
// loop traces.  Trace coverage is the S^1-saturated version of the
// evaluation-map coverage, since every trace point is gamma(0) of some phase
// shift.
CoverageResult ev0_coverage(const std::vector<SystoleResult>& results,
                            const Body& body, double eps, int boundary_samples,
                            std::uint64_t seed = 11);

// False iff two results' traces pass within point_tol of a common point
// while their phase-aligned loop distance exceeds loop_tol: heuristic
// evidence against at-most-one-systole-through-each-point.
bool uniqueness_probe(const std::vector<SystoleResult>& results,
                      double point_tol, double loop_tol);

}  // namespace capsys
