#include <cmath>
#include <limits>

#include "dbarrier/complex_lambertw.hpp"
#include "dbarrier/errors.hpp"
#include "dbarrier/time_decay.hpp"

namespace dbarrier {

namespace {

const double kK = std::pow(2.0, 4.0 / 3.0) / (3.0 * std::pow(kPi, 2.0 / 3.0));
constexpr double kInvE = 0.36787944117144232159552377016146;

void require_barrier(const BarrierParams& params) {
  if (params.is_free() || params.is_dirichlet()) throw DomainError("crossover: needs 0 < alpha < inf");
}

}  // namespace

double crossover_threshold() {
  const double w = lambert_w(0, cplx((5.0 / 3.0) / std::sqrt(kK * std::exp(1.0)), 0.0)).real();
  return std::exp(-0.6 * w);
}

double crossover_power_term(const BarrierParams& params, double t) {
  require_barrier(params);
  const double d1 = 4.0 * params.a() / std::pow(kPi, 2.5);
  return d1 / (params.alpha() * params.alpha() * t * std::sqrt(t));
}

double crossover_exponential_term(const BarrierParams& params, double t) {
  require_barrier(params);
  const double a = params.a();
  const double x = params.a_alpha();
  const double r = std::log(x) / x;
  return std::exp(-kPi / (2.0 * a * a) * t * r * r);
}

CrossoverWindow crossover_window(const BarrierParams& params) {
  require_barrier(params);
  const double a = params.a();
  const double alpha = params.alpha();
  const double x = params.a_alpha();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double l = std::log(x);
  const double scale = a * a * a * a * alpha * alpha;
  if (l == 0.0) {
    // Exponential side is identically 1; the window is [t1, inf).
    return {3.0 * kK / kPi * scale / std::pow(x, 10.0 / 3.0), std::numeric_limits<double>::infinity(), true, true,
            0.0};
  }
  const double z = -kK * l * l / std::pow(x, 10.0 / 3.0);
  CrossoverWindow win{nan, nan, false, false, z};
  if (z < -kInvE) return win;
  const double w0 = lambert_w(0, cplx(std::max(z, -kInvE), 0.0)).real();
  const double wm1 = z > -kInvE ? lambert_w(-1, cplx(z, 0.0)).real() : w0;
  win.t1 = -3.0 / kPi * w0 * scale / (l * l);
  win.t2 = -3.0 / kPi * wm1 * scale / (l * l);
  win.nonempty = win.t2 > win.t1;
  return win;
}

}  // namespace dbarrier
