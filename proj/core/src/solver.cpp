#include "capsys/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <exception>
#include <random>
#include <thread>

#include "capsys/convex.hpp"

namespace capsys {

void SolveConfig::validate() const {
  if (modes < 1 || quadrature < 4 * modes)
    throw std::invalid_argument("SolveConfig: need modes >= 1 and quadrature >= 4*modes");
  if (starts < 1) throw std::invalid_argument("SolveConfig: starts must be >= 1");
  if (!(tau0 > 0.0) || !(tau_min > 0.0) || tau_min > tau0)
    throw std::invalid_argument("SolveConfig: bad smoothing schedule");
  if (!(tau_decay > 0.0 && tau_decay < 1.0))
    throw std::invalid_argument("SolveConfig: tau_decay must be in (0,1)");
  if (max_iterations < 1) throw std::invalid_argument("SolveConfig: max_iterations");
  if (!(tol > 0.0 && tol <= 1e-3))
    throw std::invalid_argument("SolveConfig: tol must be in (0, 1e-3]");
}

namespace {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;

// Pinned RNG (Box-Muller over mt19937_64 uniforms) so runs are reproducible
// independent of the standard library's distribution internals.
struct Rng {
  std::mt19937_64 gen;
  bool have_spare = false;
  double spare = 0.0;

  explicit Rng(std::uint64_t s) : gen(s) {}
  double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  double normal() {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare = r * std::sin(2.0 * M_PI * u2);
    have_spare = true;
    return r * std::cos(2.0 * M_PI * u2);
  }
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t run) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (run + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// -J0 xdot(t) = sum_k 2 pi k e^{2 pi k t J0} xhat(k): per symplectic plane a
// complex polynomial, evaluated for all samples by one matrix product.
class PsiEvaluator {
 public:
  PsiEvaluator(const Body& body, int N, int M)
      : body_(&body), N_(N), M_(M), n_(body.dim() / 2) {
    F_.resize(M_, 2 * N_);
    B_.resize(2 * N_, M_);
    for (int k = -N_; k <= N_; ++k) {
      if (k == 0) continue;
      const int c = col(k);
      const double w = 2.0 * M_PI * k;
      for (int j = 0; j < M_; ++j) {
        const double ang = w * j / M_;
        F_(j, c) = w * Cplx(std::cos(ang), std::sin(ang));
        B_(c, j) = Cplx(std::cos(ang), -std::sin(ang)) / (w * M_);
      }
    }
  }

  int modes() const { return N_; }
  int grid() const { return M_; }

  // value of the smoothed quadrature; when grad != nullptr also the
  // H^1_0-metric gradient of it.
  double eval(const FourierLoop& x, double tau, FourierLoop* grad) const {
    const CMat Z = pack(x);
    const CMat U = F_ * Z;  // M x n, u(t_j) per plane
    CMat W;
    if (grad) W.resize(M_, n_);
    double val = 0.0;
    Vec u(2 * n_);
    for (int j = 0; j < M_; ++j) {
      for (int p = 0; p < n_; ++p) {
        u(p) = U(j, p).real();
        u(n_ + p) = U(j, p).imag();
      }
      if (grad) {
        val += body_->conj_smooth(u, tau);
        const Vec g = body_->subgrad_conj_smooth(u, tau);
        for (int p = 0; p < n_; ++p) W(j, p) = Cplx(g(p), g(n_ + p));
      } else {
        val += body_->conj_smooth(u, tau);
      }
    }
    val /= M_;
    if (grad) unpack(B_ * W, *grad);
    return val;
  }

  // Samples x(t_j) and xdot(t_j) (used by recover_beta / reconstruct).
  void sample(const FourierLoop& x, std::vector<Vec>& pos,
              std::vector<Vec>& der, std::vector<Vec>& u) const {
    const CMat Z = pack(x);
    const CMat U = F_ * Z;
    pos.assign(M_, Vec::Zero(2 * n_));
    der.assign(M_, Vec::Zero(2 * n_));
    u.assign(M_, Vec::Zero(2 * n_));
    // x(t_j) per plane: sum_k e^{i ang} z_k = columnwise with weight 1
    // instead of 2 pi k; reuse F_ by dividing the weights out.
    CMat Zpos = Z;
    for (int k = -N_; k <= N_; ++k) {
      if (k == 0) continue;
      Zpos.row(col(k)) /= 2.0 * M_PI * k;
    }
    const CMat X = F_ * Zpos;
    for (int j = 0; j < M_; ++j) {
      for (int p = 0; p < n_; ++p) {
        u[j](p) = U(j, p).real();
        u[j](n_ + p) = U(j, p).imag();
        pos[j](p) = X(j, p).real();
        pos[j](n_ + p) = X(j, p).imag();
      }
      der[j] = j0_apply(u[j]);  // xdot = J0 u since u = -J0 xdot
    }
  }

 private:
  int col(int k) const { return k < 0 ? k + N_ : N_ + k - 1; }

  CMat pack(const FourierLoop& x) const {
    CMat Z(2 * N_, n_);
    for (int k = -N_; k <= N_; ++k) {
      if (k == 0) continue;
      const auto c = x.at(k);
      for (int p = 0; p < n_; ++p) Z(col(k), p) = Cplx(c(p), c(n_ + p));
    }
    return Z;
  }
  void unpack(const CMat& G, FourierLoop& out) const {
    out = FourierLoop(2 * n_, N_);
    for (int k = -N_; k <= N_; ++k) {
      if (k == 0) continue;
      auto c = out.at(k);
      for (int p = 0; p < n_; ++p) {
        c(p) = G(col(k), p).real();
        c(n_ + p) = G(col(k), p).imag();
      }
    }
  }

  const Body* body_;
  int N_, M_, n_;
  CMat F_, B_;
};

// H^1 gradient of A at x: coefficient k maps to xhat(k) / (2 pi k).
FourierLoop action_h1_grad(const FourierLoop& x) {
  FourierLoop g(x.dim, x.modes);
  for (int k = -x.modes; k <= x.modes; ++k) {
    if (k == 0) continue;
    g.at(k) = x.at(k) / (2.0 * M_PI * k);
  }
  return g;
}

FourierLoop mirror_modes(const FourierLoop& x) {
  FourierLoop out(x.dim, x.modes);
  for (int k = 1; k <= x.modes; ++k) {
    out.at(k) = x.at(-k);
    out.at(-k) = x.at(k);
  }
  return out;
}

FourierLoop random_init(int dim, int N, Rng& rng) {
  FourierLoop x(dim, N);
  for (int k = -N; k <= N; ++k) {
    if (k == 0) continue;
    const double sigma = 1.0 / (2.0 * M_PI * std::abs(k));
    const double boost = (std::abs(k) == 1) ? 4.0 : 1.0;
    auto c = x.at(k);
    for (int i = 0; i < dim; ++i) c(i) = boost * sigma * rng.normal();
  }
  double a = action(x);
  if (a < 0.0) {
    x = mirror_modes(x);
    a = -a;
  }
  if (a < 1e-12) x.at(1)(0) += 1.0;
  return normalize_action(x);
}

struct RunState {
  FourierLoop x;
  double value = 0.0;
  int iterations = 0;
  bool converged = true;
};

RunState run_single(const Body& body, const SolveConfig& cfg,
                    const PsiEvaluator& eval, int run_index) {
  Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(run_index)));
  FourierLoop x = random_init(body.dim(), cfg.modes, rng);
  if (cfg.init_phase != 0.0) x = phase_shift(x, cfg.init_phase);

  std::vector<double> taus;
  if (!body.smooth()) {
    for (double t = cfg.tau0; t >= cfg.tau_min; t *= cfg.tau_decay)
      taus.push_back(t);
  }
  taus.push_back(0.0);  // smooth bodies descend directly at tau = 0

  RunState st;
  int budget = cfg.max_iterations;
  double alpha = 1.0;
  FourierLoop grad(body.dim(), cfg.modes);

  const bool gradient_epochs_at_zero = body.smooth();
  for (size_t ei = 0; ei < taus.size(); ++ei) {
    const double tau = taus[ei];
    if (budget <= 0) break;
    if (tau == 0.0 && !gradient_epochs_at_zero) break;  // handled by polish
    double val = eval.eval(x, tau, nullptr);
    std::vector<double> window;
    // Intermediate temperatures only need a rough solve; the value moves
    // again as soon as tau drops.
    const bool last_epoch = ei + 1 == taus.size();
    const double epoch_tol = last_epoch ? cfg.tol : std::max(cfg.tol, 1e-7);
    const int epoch_cap = std::min(budget, last_epoch ? 4000 : 1500);
    for (int it = 0; it < epoch_cap; ++it) {
      ++st.iterations;
      --budget;
      eval.eval(x, tau, &grad);
      // gradient of H/A at A = 1
      const FourierLoop ag = action_h1_grad(x);
      FourierLoop dir(x.dim, x.modes);
      dir.coef = grad.coef - val * ag.coef;
      const double delta = dir.h1_norm2();
      // For differentiable bodies the gradient norm bounds the distance to
      // the minimizer; drive it to the fp noise floor of the value.
      if (delta < (gradient_epochs_at_zero ? 1e-16 : 1e-26)) break;

      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        FourierLoop cand(x.dim, x.modes);
        cand.coef = x.coef - alpha * dir.coef;
        const double a = action(cand);
        if (a > 1e-12) {
          cand.coef /= std::sqrt(a);
          const double cval = eval.eval(cand, tau, nullptr);
          if (cval <= val - 1e-4 * alpha * delta) {
            x = std::move(cand);
            val = cval;
            alpha = std::min(alpha * 1.5, 1e8);
            accepted = true;
            break;
          }
        }
        alpha *= 0.5;
        if (alpha < 1e-18) break;
      }
      if (!accepted) break;  // stationary for this temperature

      window.push_back(val);
      if (window.size() > 20) {
        const double past = window[window.size() - 21];
        if (past - val < epoch_tol * std::abs(val) &&
            !(gradient_epochs_at_zero && delta > 1e-16))
          break;
      }
    }
    st.value = val;
  }

  if (!body.smooth() && budget > 0) {
    // tau = 0 polish: diminishing-step subgradient descent, keep the best.
    FourierLoop best = x;
    double best_val = eval.eval(x, 0.0, nullptr);
    const int polish = std::min(budget, 600);
    for (int j = 0; j < polish; ++j) {
      ++st.iterations;
      --budget;
      const double val = eval.eval(x, 0.0, &grad);
      const FourierLoop ag = action_h1_grad(x);
      FourierLoop dir(x.dim, x.modes);
      dir.coef = grad.coef - val * ag.coef;
      const double dn = std::sqrt(dir.h1_norm2());
      if (dn < 1e-14) break;
      const double step = 0.02 / ((1.0 + j / 25.0) * dn);
      FourierLoop cand(x.dim, x.modes);
      cand.coef = x.coef - step * dir.coef;
      const double a = action(cand);
      if (a <= 1e-12) break;
      cand.coef /= std::sqrt(a);
      x = std::move(cand);
      const double v = eval.eval(x, 0.0, nullptr);
      if (v < best_val) {
        best_val = v;
        best = x;
      }
    }
    x = best;
    st.value = best_val;
  } else {
    st.value = eval.eval(x, 0.0, nullptr);
  }

  st.converged = budget > 0;
  st.x = std::move(x);
  return st;
}

void check_psi_pre(const Body&, const FourierLoop& x, int M) {
  if (M < 4 * x.modes)
    throw std::invalid_argument("psi: quadrature must satisfy M >= 4N");
}

}  // namespace

double psi(const Body& body, const FourierLoop& x, int M, double tau) {
  check_psi_pre(body, x, M);
  PsiEvaluator eval(body, x.modes, M);
  return eval.eval(x, tau, nullptr);
}

FourierLoop subgrad_psi(const Body& body, const FourierLoop& x, int M, double tau) {
  check_psi_pre(body, x, M);
  PsiEvaluator eval(body, x.modes, M);
  FourierLoop g(body.dim(), x.modes);
  eval.eval(x, tau, &g);
  return g;
}

std::vector<RunResult> minimize(const Body& body, const SolveConfig& cfg,
                                int threads) {
  cfg.validate();
  PsiEvaluator eval(body, cfg.modes, cfg.quadrature);
  std::vector<RunResult> results(cfg.starts);

  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, cfg.starts);

  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](int w) {
    try {
      for (int r = w; r < cfg.starts; r += workers) {
        RunState st = run_single(body, cfg, eval, r);
        results[r] = RunResult{std::move(st.x), st.value, st.converged, r,
                               st.iterations};
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::stable_sort(results.begin(), results.end(),
                   [](const RunResult& a, const RunResult& b) {
                     if (a.value != b.value) return a.value < b.value;
                     return a.run_index < b.run_index;
                   });
  return results;
}

Vec recover_beta(const Body& body, const FourierLoop& x, double psi_value, int M) {
  PsiEvaluator eval(body, x.modes, M);
  std::vector<Vec> pos, der, u;
  eval.sample(x, pos, der, u);
  Vec beta = Vec::Zero(body.dim());
  for (int j = 0; j < M; ++j)
    beta += body.subgrad_conj(u[j]) - psi_value * pos[j];
  return beta / M;
}

SystoleResult reconstruct(const Body& body, const FourierLoop& x,
                          double psi_value, const Vec& beta, int M) {
  if (!(psi_value > 0.0))
    throw std::invalid_argument("reconstruct: psi must be positive");
  PsiEvaluator eval(body, x.modes, M);
  std::vector<Vec> pos, der, u;
  eval.sample(x, pos, der, u);

  SystoleResult res;
  res.minimizer = x;
  res.beta = beta;
  res.loop.dim = body.dim();
  res.loop.samples.resize(M);
  res.loop.deriv.resize(M);
  const double root = std::sqrt(psi_value);
  for (int j = 0; j < M; ++j) {
    res.loop.samples[j] = (psi_value * pos[j] + beta) / root;
    res.loop.deriv[j] = root * der[j];
  }
  res.T = action(res.loop);
  double bres = 0.0;
  for (int j = 0; j < M; ++j)
    bres = std::max(bres, std::abs(body.gauge2(res.loop.samples[j]) - 1.0));
  res.boundary_residual = bres;
  res.inclusion = inclusion_residual(body, res.loop, res.T);
  res.inclusion_residual = res.inclusion.residual;
  return res;
}

InclusionReport inclusion_residual(const Body& body, const TimeLoop& loop,
                                   double T) {
  if (!(T > 0.0)) throw std::invalid_argument("inclusion_residual: T must be > 0");
  const int M = loop.grid();
  if (M < 4) throw std::invalid_argument("inclusion_residual: too few samples");

  std::vector<Vec> der = loop.deriv;
  if (der.empty()) {
    der.resize(M);
    for (int j = 0; j < M; ++j)
      der[j] = 0.5 * M * (loop.samples[(j + 1) % M] - loop.samples[(j + M - 1) % M]);
  }

  double max_speed = 0.0;
  for (const auto& d : der) max_speed = std::max(max_speed, d.norm());

  // Detect derivative jumps of piecewise-linear inputs; exclude two grid
  // cells on both sides of each jump.
  std::vector<bool> excluded(M, false);
  const double jump = 0.25 * max_speed;
  for (int j = 0; j < M; ++j) {
    if ((der[(j + 1) % M] - der[j]).norm() > jump) {
      for (int o = -1; o <= 2; ++o) excluded[((j + o) % M + M) % M] = true;
    }
  }

  InclusionReport rep;
  int start = -1;
  for (int j = 0; j < M; ++j) {
    if (excluded[j]) {
      ++rep.excluded;
      if (start < 0) start = j;
    } else if (start >= 0) {
      rep.windows.emplace_back(start, j - 1);
      start = -1;
    }
  }
  if (start >= 0) rep.windows.emplace_back(start, M - 1);
  if (rep.excluded == M) excluded.assign(M, false);  // degenerate: keep all

  // Activity tolerance for the subdifferential: loops that only reach the
  // boundary approximately are certified against the eps-active cone, with
  // eps tied to how far they sit from the boundary.
  double bres = 0.0;
  for (const auto& s : loop.samples)
    bres = std::max(bres, std::abs(body.gauge2(s) - 1.0));
  const double act_tol = std::max(1e-9, 2.0 * bres);

  double worst = 0.0;
  for (int j = 0; j < M; ++j) {
    if (excluded[j]) continue;
    const Vec v = der[j] / T;
    auto gens = body.subgrad_gauge2_generators(loop.samples[j], act_tol);
    for (auto& g : gens) g = j0_apply(g);
    const double d = (gens.size() == 1) ? (v - gens[0]).norm()
                                        : distance_to_hull(v, gens).distance;
    worst = std::max(worst, d);
  }
  rep.residual = worst;
  return rep;
}

}  // namespace capsys
