#include <algorithm>
#include <cmath>
#include <string>

#if defined(__SSE2__)
#include <xmmintrin.h>
#endif

#include "dbarrier/errors.hpp"
#include "dbarrier/simd/kernels.hpp"
#include "dbarrier/time_decay.hpp"

namespace dbarrier {

namespace {

// Crank-Nicolson propagator for H = -d^2/dx^2 + V on interior nodes, Dirichlet walls.
class CrankNicolson {
 public:
  CrankNicolson(std::vector<double> V, double dx) : V_(std::move(V)), dx_(dx) {}

  void set_step(double h) {
    if (h == h_) return;
    h_ = h;
    const std::size_t n = V_.size();
    const double inv_dx2 = 1.0 / (dx_ * dx_);
    rhs_diag_.resize(n);
    inv_.resize(n);
    cp_.resize(n);
    rhs_off_ = cplx(0.0, 0.5 * h * inv_dx2);
    lhs_off_ = -rhs_off_;
    for (std::size_t j = 0; j < n; ++j) {
      const double hj = 2.0 * inv_dx2 + V_[j];
      rhs_diag_[j] = cplx(1.0, -0.5 * h * hj);
    }
    // Thomas elimination of the constant-off-diagonal LHS, stored for reuse.
    cplx prev_cp = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx b(1.0, 0.5 * h * (2.0 * inv_dx2 + V_[j]));
      const cplx den = b - lhs_off_ * prev_cp;
      inv_[j] = 1.0 / den;
      cp_[j] = lhs_off_ * inv_[j];
      prev_cp = cp_[j];
    }
  }

  void step(std::vector<cplx>& u, std::vector<cplx>& work) const {
    const std::size_t n = u.size();
    simd::tridiag_apply(rhs_diag_.data(), rhs_off_, u.data(), work.data(), n);
    // Written out in real arithmetic: std::complex products go through the NaN-aware libgcc path.
    const double or_ = lhs_off_.real(), oi = lhs_off_.imag();
    double pr = 0.0, pi = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double dr = work[j].real() - (or_ * pr - oi * pi);
      const double di = work[j].imag() - (or_ * pi + oi * pr);
      const double ir = inv_[j].real(), ii = inv_[j].imag();
      pr = dr * ir - di * ii;
      pi = dr * ii + di * ir;
      work[j] = {pr, pi};
    }
    u[n - 1] = work[n - 1];
    for (std::size_t j = n - 1; j-- > 0;) {
      const double cr = cp_[j].real(), ci = cp_[j].imag();
      const double xr = u[j + 1].real(), xi = u[j + 1].imag();
      u[j] = {work[j].real() - (cr * xr - ci * xi), work[j].imag() - (cr * xi + ci * xr)};
    }
  }

 private:
  std::vector<double> V_;
  double dx_;
  double h_ = -1.0;
  std::vector<cplx> rhs_diag_;
  std::vector<cplx> inv_;
  std::vector<cplx> cp_;
  cplx rhs_off_;
  cplx lhs_off_;
};

// The far field of the box decays into subnormals, which are two orders of magnitude slower
// on x86. Flush them to zero for the duration of a run.
class FlushDenormals {
 public:
#if defined(__SSE2__)
  FlushDenormals() : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | 0x8040); }
  ~FlushDenormals() { _mm_setcsr(saved_); }

 private:
  unsigned saved_;
#endif
};

double auto_box(const BarrierParams& params, double t_max) {
  const double a = params.a();
  return a + std::max(6.0 * std::sqrt(t_max), 3.0 * kPi * t_max / a) + 1.0;
}

}  // namespace

TdseRun tdse_run(const TestFunction& psi, const TestFunction& phi, const BarrierParams& params,
                 const std::vector<double>& t_grid, double dx, double dt, double box) {
  if (params.is_dirichlet()) throw DomainError("tdse: alpha = inf has no finite grid representation");
  if (!(dx > 0.0) || !(dt > 0.0) || !(box > params.a())) throw DomainError("tdse: need dx, dt > 0 and box > a");
  const double a = params.a();
  // Snap dx so that +-a are grid nodes.
  const long na = std::max(1L, std::lround(a / dx));
  dx = a / static_cast<double>(na);
  const long nl = static_cast<long>(std::ceil(box / dx));
  box = nl * dx;
  const std::size_t n = static_cast<std::size_t>(2 * nl - 1);  // nodes j = 1 .. 2nl-1

  std::vector<double> V(n, 0.0);
  std::vector<cplx> u(n), w(n), work(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (static_cast<long>(i) + 1 - nl) * dx;
    u[i] = phi.eval(x, params);
    w[i] = psi.eval(x, params);
  }
  V[static_cast<std::size_t>(nl - na - 1)] = params.alpha() / dx;
  V[static_cast<std::size_t>(nl + na - 1)] = params.alpha() / dx;

  const FlushDenormals ftz;
  CrankNicolson cn(std::move(V), dx);
  TdseRun run{{}, {}, dx, dt, box};
  double now = 0.0;
  for (double t : t_grid) {
    if (!(t >= now)) throw DomainError("tdse: t grid must be increasing and >= 0");
    const double span = t - now;
    if (span > 0.0) {
      const long steps = std::max(1L, static_cast<long>(std::ceil(span / dt - 1e-9)));
      cn.set_step(span / static_cast<double>(steps));
      for (long s = 0; s < steps; ++s) cn.step(u, work);
    }
    now = t;
    run.overlap.push_back(dx * simd::complex_dot(w.data(), u.data(), n));
    run.norm.push_back(std::sqrt(dx * simd::norm2(u.data(), n)));
    if (!std::isfinite(run.norm.back())) throw StabilityError("tdse: solution is not finite");
  }
  return run;
}

DecayCurve tdse_oracle(const TestFunction& psi, const TestFunction& phi, const BarrierParams& params,
                       const std::vector<double>& t_grid, const TdseOptions& opts) {
  if (t_grid.empty()) throw DomainError("tdse: empty t grid");
  const double t_max = *std::max_element(t_grid.begin(), t_grid.end());
  const double dx = opts.dx > 0.0 ? opts.dx : params.a() / 100.0;
  const double box = opts.box > 0.0 ? opts.box : auto_box(params, t_max);
  const TdseRun fine = tdse_run(psi, phi, params, t_grid, dx, opts.dt, box);
  if (opts.refinement_check) {
    const TdseRun coarse = tdse_run(psi, phi, params, t_grid, 2.0 * fine.dx, 2.0 * opts.dt, box);
    double worst = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i)
      worst = std::max(worst, std::abs(fine.overlap[i] - coarse.overlap[i]));
    if (worst > opts.check_tolerance)
      throw StabilityError("tdse: halving dx and dt changed the overlap by " + std::to_string(worst));
  }
  return DecayCurve{params, psi, phi, t_grid, fine.overlap, std::vector<Method>(t_grid.size(), Method::Tdse)};
}

}  // namespace dbarrier
