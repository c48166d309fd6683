#include "dbarrier/resolvent_kernel.hpp"

#include <cmath>

#include "dbarrier/errors.hpp"

namespace dbarrier {

namespace {

constexpr double kPoleThreshold = 1e-13;

void require_finite_alpha(const BarrierParams& params) {
  if (params.is_dirichlet()) throw DomainError("resolvent kernel: alpha = inf has no resolvent in this form");
}

}  // namespace

cplx g_denominator_q(cplx k, const BarrierParams& params) {
  const double alpha = params.alpha();
  const cplx s = 2.0 * k + kI * alpha;
  return s * s + alpha * alpha * std::exp(4.0 * kI * k * params.a());
}

double g_denominator_normalized(cplx k, const BarrierParams& params) {
  const double alpha = params.alpha();
  const double scale = std::norm(2.0 * k + kI * alpha) +
                       alpha * alpha * std::abs(std::exp(4.0 * kI * k * params.a()));
  if (scale == 0.0) return 0.0;
  return std::abs(g_denominator_q(k, params)) / scale;
}

cplx g_of_k(cplx k, const BarrierParams& params) {
  require_finite_alpha(params);
  if (k == cplx(0.0, 0.0)) throw PoleError("g_of_k: k = 0");
  if (g_denominator_normalized(k, params) < kPoleThreshold)
    throw PoleError("g_of_k: k is a pole of g");
  return -1.0 / (2.0 * k * g_denominator_q(k, params));
}

cplx g_residue(cplx k_pole, const BarrierParams& params) {
  require_finite_alpha(params);
  const double a = params.a();
  const double alpha = params.alpha();
  const cplx bracket = (2.0 * k_pole + kI * alpha) +
                       kI * a * alpha * alpha * std::exp(4.0 * kI * k_pole * a);
  return -1.0 / (8.0 * k_pole * bracket);
}

cplx free_kernel(double x, double y, cplx k) {
  if (k == cplx(0.0, 0.0)) throw DomainError("free_kernel: k = 0");
  return kI / (2.0 * k) * std::exp(kI * k * std::abs(x - y));
}

cplx kernel_eval(const KernelPoint& p, const BarrierParams& params) {
  require_finite_alpha(params);
  if (p.k == cplx(0.0, 0.0)) throw DomainError("kernel_eval: k = 0");
  const cplx k0 = free_kernel(p.x, p.y, p.k);
  if (params.is_free()) return k0;
  const double a = params.a();
  const double alpha = params.alpha();
  const cplx k = p.k;
  const cplx exm = std::exp(kI * k * std::abs(p.x + a));  // e^{ik|x+a|}
  const cplx exp_ = std::exp(kI * k * std::abs(p.x - a));
  const cplx eym = std::exp(kI * k * std::abs(p.y + a));
  const cplx eyp = std::exp(kI * k * std::abs(p.y - a));
  const cplx direct = -alpha * (2.0 * k + kI * alpha);
  const cplx cross = kI * alpha * alpha * std::exp(2.0 * kI * k * a);
  const cplx sum = direct * (exm * eym + exp_ * eyp) + cross * (exm * eyp + exp_ * eym);
  return k0 + g_of_k(k, params) * sum;
}

}  // namespace dbarrier
