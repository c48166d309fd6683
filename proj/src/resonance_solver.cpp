#include "dbarrier/resonance_solver.hpp"

#include <cmath>
#include <string>

#include "dbarrier/complex_lambertw.hpp"
#include "dbarrier/errors.hpp"

namespace dbarrier {

namespace {

// Beyond this a alpha e^{a alpha} overflows a double.
constexpr double kOverflowGuard = 700.0;

void require_finite_alpha(const BarrierParams& params, const char* who) {
  if (params.is_dirichlet() || params.is_free())
    throw DomainError(std::string(who) + ": needs 0 < alpha < inf");
}

double sign_of(Family family) { return family == Family::One ? -1.0 : 1.0; }

}  // namespace

cplx resonance_k(Family family, BranchIndex m, const BarrierParams& params) {
  require_finite_alpha(params, "resonance_k");
  if (family == Family::Two && m == 0)
    throw ExcludedRootError("resonance_k: k_{2,0} = 0 is not a resonance");
  const double x = params.a_alpha();
  cplx w;
  if (x <= kOverflowGuard) {
    w = lambert_w(m, cplx(sign_of(family) * x * std::exp(x), 0.0));
  } else {
    const double arg = family == Family::One ? kPi : 0.0;
    w = lambert_w_from_log(m, cplx(std::log(x) + x, arg));
  }
  return kI / (2.0 * params.a()) * (w - x);
}

Resonance resonance(Family family, BranchIndex m, const BarrierParams& params) {
  const cplx k = resonance_k(family, m, params);
  Resonance r{family, m, k, k * k, resonance_residual(k, family, params), false};
  r.physical = m < 0 && k.real() > 0.0 && k.imag() < 0.0;
  return r;
}

Resonance resonance_energy(int n, const BarrierParams& params) {
  if (n < 1) throw DomainError("resonance_energy: n must be >= 1, got " + std::to_string(n));
  if (n % 2) return resonance(Family::One, -(n + 1) / 2, params);
  return resonance(Family::Two, -n / 2, params);
}

ResonanceTable resonance_table(const BarrierParams& params, int n_max) {
  ResonanceTable table{params, {}};
  table.entries.reserve(n_max > 0 ? n_max : 0);
  for (int n = 1; n <= n_max; ++n) table.entries.push_back(resonance_energy(n, params));
  return table;
}

cplx resonance_function(cplx k, Family family, const BarrierParams& params) {
  const double alpha = params.alpha();
  return alpha * std::exp(2.0 * kI * k * params.a()) + sign_of(family) * kI * (2.0 * k + kI * alpha);
}

cplx resonance_function_derivative(cplx k, Family family, const BarrierParams& params) {
  const double a = params.a();
  const double alpha = params.alpha();
  return 2.0 * kI * a * alpha * std::exp(2.0 * kI * k * a) + sign_of(family) * 2.0 * kI;
}

double resonance_residual(cplx k, Family family, const BarrierParams& params) {
  return std::abs(resonance_function(k, family, params));
}

cplx resonance_product_form(cplx k, const BarrierParams& params) {
  const double alpha = params.alpha();
  return alpha * alpha * std::exp(4.0 * kI * k * params.a()) + 4.0 * k * k + 4.0 * kI * k * alpha -
         alpha * alpha;
}

int resonance_branch_of(cplx k, Family family, const BarrierParams& params) {
  const double x = params.a_alpha();
  const cplx w = x - 2.0 * kI * params.a() * k;
  if (x <= kOverflowGuard) return lambert_w_branch_of(w, cplx(sign_of(family) * x * std::exp(x), 0.0));
  const double arg = family == Family::One ? kPi : 0.0;
  return static_cast<int>(std::lround((std::imag(w + std::log(w)) - arg) / (2.0 * kPi)));
}

cplx refine_resonance_newton(cplx k_seed, Family family, const BarrierParams& params) {
  require_finite_alpha(params, "refine_resonance_newton");
  const double tol = 1e-12 * std::max(1.0, params.alpha());
  cplx k = k_seed;
  for (int it = 0; it < 100; ++it) {
    const cplx f = resonance_function(k, family, params);
    if (std::abs(f) <= tol) return k;
    const cplx df = resonance_function_derivative(k, family, params);
    if (df == cplx(0.0, 0.0)) break;
    k -= f / df;
    if (!std::isfinite(k.real()) || !std::isfinite(k.imag())) break;
  }
  throw ConvergenceError("refine_resonance_newton: no convergence from seed");
}

cplx resonance_large_alpha(int n, const BarrierParams& params) {
  const double a = params.a();
  const double x = params.a_alpha();
  const double kn = n * kPi / (2.0 * a);
  const cplx bracket(kn * (1.0 - 1.0 / x + 1.0 / (x * x)),
                     -(1.0 / (2.0 * a)) * n * n * kPi * kPi / (2.0 * x * x));
  return bracket * bracket;
}

cplx resonance_large_alpha_simplified(int n, const BarrierParams& params) {
  const double a = params.a();
  const double x = params.a_alpha();
  const double kn = n * kPi / (2.0 * a);
  const double np = n * kPi;
  return {kn * kn, -np * np * np / (4.0 * a * a * x * x)};
}

}  // namespace dbarrier
