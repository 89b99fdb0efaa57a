#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "capsys/geometry.hpp"
#include "capsys/loops.hpp"

namespace capsys {

struct SolveConfig {
  int modes = 24;         // Fourier truncation N
  int quadrature = 192;   // sample count M (default 8N)
  int starts = 8;         // independent multistart runs
  std::uint64_t seed = 1;
  double tau0 = 0.25;     // smoothing schedule: initial temperature,
  double tau_decay = 0.5; // geometric decay,
  double tau_min = 1e-4;  // floor before the tau = 0 polish
  int max_iterations = 50000;  // total per-run budget
  double tol = 1e-9;      // relative value-change stop tolerance (20-iter window)
  double init_phase = 0.0;  // phase shift applied to every initialization

  void validate() const;
};

// Dual value at x: trapezoidal quadrature of H*_K(-J0 xdot(t)) on M uniform
// samples, with the vertex maxes log-sum-exp smoothed at temperature tau.
// The caller is responsible for normalizing x to action 1.
double psi(const Body& body, const FourierLoop& x, int M, double tau);

// H^1_0-metric gradient of the smoothed quadrature value: samplewise
// conjugate subgradients analyzed back to coefficients and divided by the
// (2 pi k)^2 metric weights.  For tau > 0 this is the exact gradient of psi.
FourierLoop subgrad_psi(const Body& body, const FourierLoop& x, int M, double tau);

struct RunResult {
  FourierLoop x;      // minimizer on Lambda = {A = 1}
  double value;       // psi at tau = 0
  bool converged;
  int run_index;
  int iterations;
};

// Multistart minimization of the 0-homogeneous H/A with per-iteration
// renormalization onto Lambda: annealed smoothed-gradient descent with
// backtracking, then a diminishing-step subgradient polish at tau = 0.
// Results are sorted by value; output is identical for any worker count.
std::vector<RunResult> minimize(const Body& body, const SolveConfig& cfg,
                                int threads = 0);

// Constant recovering the differential inclusion at a minimizer:
// beta = mean_j [ subgrad_conj(-J0 xdot(t_j)) - psi * x(t_j) ].
Vec recover_beta(const Body& body, const FourierLoop& x, double psi_value, int M);

struct InclusionReport {
  double residual = 0.0;  // max over retained samples
  std::vector<std::pair<int, int>> windows;  // excluded sample-index ranges
  int excluded = 0;
};

struct SystoleResult {
  TimeLoop loop;        // gamma on the boundary
  double T = 0.0;       // action, recomputed from samples
  Vec beta;
  double inclusion_residual = 0.0;
  double boundary_residual = 0.0;  // max |H_K(gamma(t_j)) - 1|
  InclusionReport inclusion;
  FourierLoop minimizer;
  bool converged = true;
};

// gamma = (psi * x + beta) / sqrt(psi), sampled with derivatives on the
// M-grid; populates the action and both residuals.
SystoleResult reconstruct(const Body& body, const FourierLoop& x,
                          double psi_value, const Vec& beta, int M);

// max_j dist(gammadot(t_j)/T, J0 * subdifferential of H_K at gamma(t_j)),
// the set distance computed exactly (convex-hull distance for polytope-like
// bodies, singleton gradient for ellipsoids).  Samples within two grid cells
// of a detected derivative jump are excluded and reported.  Derivatives are
// taken from the loop when present, else by central differences.
InclusionReport inclusion_residual(const Body& body, const TimeLoop& loop,
                                   double T);

}  // namespace capsys
