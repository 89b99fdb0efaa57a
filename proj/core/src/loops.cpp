#include "capsys/loops.hpp"

#include <cmath>

namespace capsys {

namespace {

inline double two_pi() { return 2.0 * M_PI; }

// Applies the plane rotation by `angle` to column vector v in place-free form.
inline Vec rot(const Vec& v, double angle) { return rotate_planes(v, angle); }

}  // namespace

double FourierLoop::h1_norm2() const {
  double s = 0.0;
  for (int k = -modes; k <= modes; ++k) {
    if (k == 0) continue;
    const double w = two_pi() * k;
    s += w * w * at(k).squaredNorm();
  }
  return s;
}

double action(const FourierLoop& x) {
  double s = 0.0;
  for (int k = -x.modes; k <= x.modes; ++k) {
    if (k == 0) continue;
    s += k * x.at(k).squaredNorm();
  }
  return M_PI * s;
}

double action(const TimeLoop& g) {
  const int M = g.grid();
  if (M < 2) throw std::invalid_argument("action: need at least 2 samples");
  double s = 0.0;
  if (!g.deriv.empty()) {
    // <gdot, J0 g> = omega(g, gdot)
    for (int j = 0; j < M; ++j) s += symplectic_form(g.samples[j], g.deriv[j]);
    return 0.5 * s / M;
  }
  for (int j = 0; j < M; ++j)
    s += symplectic_form(g.samples[j], g.samples[(j + 1) % M]);
  return 0.5 * s;
}

FourierLoop phase_shift(const FourierLoop& x, double theta) {
  FourierLoop out(x.dim, x.modes);
  for (int k = -x.modes; k <= x.modes; ++k) {
    if (k == 0) continue;
    out.at(k) = rot(x.at(k), -two_pi() * k * theta);
  }
  return out;
}

TimeLoop center(const TimeLoop& g) {
  TimeLoop out = g;
  if (g.samples.empty()) return out;
  Vec mean = Vec::Zero(g.dim);
  for (const auto& s : g.samples) mean += s;
  mean /= static_cast<double>(g.samples.size());
  for (auto& s : out.samples) s -= mean;
  return out;
}

TimeLoop to_time(const FourierLoop& x, int M) {
  if (M < 4 * x.modes)
    throw std::invalid_argument("to_time: grid must satisfy M >= 4N");
  TimeLoop out;
  out.dim = x.dim;
  out.samples.assign(M, Vec::Zero(x.dim));
  out.deriv.assign(M, Vec::Zero(x.dim));
  for (int j = 0; j < M; ++j) {
    const double t = static_cast<double>(j) / M;
    for (int k = -x.modes; k <= x.modes; ++k) {
      if (k == 0) continue;
      const double ang = two_pi() * k * t;
      const Vec r = rot(x.at(k), ang);
      out.samples[j] += r;
      out.deriv[j] += two_pi() * k * j0_apply(r);
    }
  }
  return out;
}

FourierLoop from_time(const TimeLoop& g, int N) {
  const int M = g.grid();
  if (M < 2 * N + 1)
    throw std::invalid_argument("from_time: grid too coarse for requested modes");
  const TimeLoop c = center(g);
  FourierLoop out(g.dim, N);
  for (int k = -N; k <= N; ++k) {
    if (k == 0) continue;
    Vec acc = Vec::Zero(g.dim);
    for (int j = 0; j < M; ++j)
      acc += rot(c.samples[j], -two_pi() * k * static_cast<double>(j) / M);
    out.at(k) = acc / M;
  }
  return out;
}

FourierLoop normalize_action(const FourierLoop& x) {
  const double a = action(x);
  if (!(a > 0.0))
    throw std::invalid_argument("normalize_action: loop has nonpositive action");
  FourierLoop out = x;
  out.coef /= std::sqrt(a);
  return out;
}

FourierLoop truncate(const FourierLoop& x, int N2) {
  if (N2 >= x.modes) return x;
  FourierLoop out(x.dim, N2);
  for (int k = -N2; k <= N2; ++k) {
    if (k == 0) continue;
    out.at(k) = x.at(k);
  }
  return out;
}

Vec eval(const FourierLoop& x, double t) {
  Vec v = Vec::Zero(x.dim);
  for (int k = -x.modes; k <= x.modes; ++k) {
    if (k == 0) continue;
    v += rot(x.at(k), two_pi() * k * t);
  }
  return v;
}

Vec eval_deriv(const FourierLoop& x, double t) {
  Vec v = Vec::Zero(x.dim);
  for (int k = -x.modes; k <= x.modes; ++k) {
    if (k == 0) continue;
    v += two_pi() * k * j0_apply(rot(x.at(k), two_pi() * k * t));
  }
  return v;
}

}  // namespace capsys
