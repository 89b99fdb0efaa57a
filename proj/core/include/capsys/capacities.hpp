#pragma once

#include <string>
#include <vector>

#include "capsys/geometry.hpp"
#include "capsys/solver.hpp"

namespace capsys {

enum class Provenance { ClosedForm, Numeric };

struct CapacitySequence {
  std::vector<double> values;          // c_1..c_m, nondecreasing
  std::vector<Provenance> provenance;  // per entry
  double rel_tol = 1e-6;               // comparison tolerance
};

struct IndexResult {
  int index = 1;
  bool is_lower_bound = false;  // plateau reached the last computed entry
};

// c_i of E(a_1,...,a_n): the positive integer multiples of the a_i merged in
// nondecreasing order.  The merge is performed in exact rational arithmetic
// (every double is a rational), so plateaus are never corrupted by the merge.
CapacitySequence ellipsoid_sequence(const std::vector<double>& a, int m);

// c_i of the polydisc P(a,...,a): i * a.
CapacitySequence polydisc_sequence(double a, int n, int m);

// Best multistart value of the dual minimization; the numeric first capacity.
double c1_numeric(const Body& body, const SolveConfig& cfg, int threads = 0);

// Plateau length max{ i : c_i <= c_1 (1 + rel_tol) }.
IndexResult sys_index(const CapacitySequence& seq);

// c_n == c_1 within rel_tol; requires at least n entries.
bool is_generalized_zoll(const CapacitySequence& seq, int n);

enum class BoundFlavor { General, CentrallySymmetric, S1Invariant, UniquenessOfSystoles };

// 4n^3 | 2n^2 | n | n.
long long index_bound(int n, BoundFlavor flavor);

// c1^n / (n! * volume).
double systolic_ratio(double c1, double volume, int n);

}  // namespace capsys
