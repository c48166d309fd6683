#include "dbarrier/barrier_model.hpp"

#include <cmath>
#include <string>

#include "dbarrier/errors.hpp"

namespace dbarrier {

BarrierParams::BarrierParams(double a, double alpha) : a_(a), alpha_(alpha) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("BarrierParams: a must be finite and > 0");
  if (std::isnan(alpha) || alpha < 0.0) throw DomainError("BarrierParams: alpha must be >= 0 or inf");
}

BarrierParams BarrierParams::from_physical_units(double a, double alpha, double mass, double hbar) {
  if (!(mass > 0.0) || !(hbar > 0.0)) throw DomainError("from_physical_units: mass and hbar must be > 0");
  const double s = std::sqrt(2.0 * mass) / hbar;
  return {a * s, alpha * s};
}

bool BarrierParams::is_dirichlet() const { return std::isinf(alpha_); }

EigenstateInf make_eigenstate(int n, const BarrierParams& params) {
  if (n < 1) throw DomainError("eigenstate: n must be >= 1, got " + std::to_string(n));
  return {n, n % 2 ? Parity::Even : Parity::Odd, n * kPi / (2.0 * params.a())};
}

double eigen_energy_inf(int n, const BarrierParams& params) {
  const double k = make_eigenstate(n, params).k_n;
  return k * k;
}

double eigenstate_eval(const EigenstateInf& state, const BarrierParams& params, double x) {
  const double a = params.a();
  if (x < -a || x > a) return 0.0;
  const double norm = 1.0 / std::sqrt(a);
  if (state.parity == Parity::Even) return norm * std::cos(state.k_n * x);
  return norm * std::sin(state.k_n * x);
}

cplx phi1(cplx z) {
  if (std::abs(z) > 0.5) return (std::exp(z) - 1.0) / z;
  cplx s = 1.0, term = 1.0;
  for (int n = 2; n < 22; ++n) {
    term *= z / static_cast<double>(n);
    s += term;
  }
  return s;
}

cplx phi2(cplx z) {
  if (std::abs(z) > 0.5) return (std::exp(z) - 1.0 - z) / (z * z);
  cplx s = 0.5, term = 0.5;
  for (int n = 3; n < 23; ++n) {
    term *= z / static_cast<double>(n);
    s += term;
  }
  return s;
}

cplx psi1_edge_overlap(cplx k, double a) {
  const cplx u = 2.0 * k * a;
  const double c = 2.0 * kPi * std::sqrt(a);
  if (std::abs(u - kPi) < 0.5) return c * kI * phi1(kI * (u - kPi)) / (kPi + u);
  if (std::abs(u + kPi) < 0.5) return -c * kI * phi1(kI * (u + kPi)) / (kPi - u);
  return c * (std::exp(kI * u) + 1.0) / (kPi * kPi - u * u);
}

cplx eigenstate_fourier_psi1(const BarrierParams& params, double omega) {
  const double a = params.a();
  return std::exp(cplx(0.0, -omega * a)) * psi1_edge_overlap(omega, a) / std::sqrt(2.0 * kPi);
}

cplx free_decay_reference(const BarrierParams& params, double t) {
  if (!(t > 0.0)) throw DomainError("free_decay_reference: t must be > 0");
  const double pi3 = kPi * kPi * kPi;
  return 8.0 * params.a() * std::sqrt(cplx(0.0, -kPi)) / (std::sqrt(t) * pi3);
}

}  // namespace dbarrier
