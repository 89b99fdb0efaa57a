#pragma once

#include <vector>

#include "capsys/linalg.hpp"

namespace capsys {

// Zero-mean loop x(t) = sum_{0<|k|<=N} e^{2 pi k t J0} xhat(k) in R^{2n},
// stored as the coefficient matrix with one column per mode.  Frequencies run
// k = -N..-1, 1..N; there is no k = 0 column, so the mean is zero by
// construction.
struct FourierLoop {
  int dim = 0;    // 2n
  int modes = 0;  // N
  Mat coef;       // dim x 2N

  FourierLoop() = default;
  FourierLoop(int dim_, int modes_)
      : dim(dim_), modes(modes_), coef(Mat::Zero(dim_, 2 * modes_)) {}

  int col(int k) const { return k < 0 ? k + modes : modes + k - 1; }
  Eigen::Ref<Vec> at(int k) { return coef.col(col(k)); }
  Eigen::Ref<const Vec> at(int k) const { return coef.col(col(k)); }
  double h1_norm2() const;  // sum (2 pi k)^2 |xhat(k)|^2
};

// Time-sampled loop: samples[j] = gamma(j / M); derivative samples optional.
struct TimeLoop {
  int dim = 0;
  std::vector<Vec> samples;
  std::vector<Vec> deriv;  // empty when absent

  int grid() const { return static_cast<int>(samples.size()); }
};

// A(x) = 1/2 int <xdot, J0 x> dt = pi sum_k k |xhat(k)|^2 (exact).
double action(const FourierLoop& x);

// Symplectic area of the sampled loop: exact trapezoid of 1/2 <gdot, J0 g>
// when derivatives are present (exact for band-limited loops on fine grids),
// otherwise the polygon area 1/2 sum omega(g_j, g_{j+1}) (exact for
// piecewise-linear loops with grid-aligned corners).
double action(const TimeLoop& g);

// theta . x = x(. - theta): xhat(k) |-> rotation by -2 pi k theta.
FourierLoop phase_shift(const FourierLoop& x, double theta);

// Subtracts the discrete mean.
TimeLoop center(const TimeLoop& g);

// Synthesis at M uniform samples with exact derivatives; requires M >= 4N
// (the anti-aliasing rule used by all quadratures downstream).
TimeLoop to_time(const FourierLoop& x, int M);

// Discrete Fourier analysis of the centered samples, truncated to |k| <= N.
// Inverts to_time exactly (up to round-off) whenever M >= 2N + 1.
FourierLoop from_time(const TimeLoop& g, int N);

// x / sqrt(A(x)); requires A(x) > 0.
FourierLoop normalize_action(const FourierLoop& x);

// Drops modes with |k| > N2.
FourierLoop truncate(const FourierLoop& x, int N2);

// Evaluate x(t) (and optionally xdot(t)) at one arbitrary time.
Vec eval(const FourierLoop& x, double t);
Vec eval_deriv(const FourierLoop& x, double t);

}  // namespace capsys
