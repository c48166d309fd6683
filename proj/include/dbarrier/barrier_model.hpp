#pragma once

#include <limits>

#include "dbarrier/types.hpp"

namespace dbarrier {

/// H_alpha = -d^2/dx^2 + alpha delta(x + a) + alpha delta(x - a), in units with hbar^2/2m = 1.
/// alpha = +inf is the Dirichlet box on [-a, a]; alpha = 0 is the free Laplacian.
class BarrierParams {
 public:
  BarrierParams(double a, double alpha);

  /// Converts a length and a delta strength given in units where the kinetic term is
  /// -(hbar^2/2m) d^2/dx^2. Both are scaled once by sqrt(2m)/hbar.
  static BarrierParams from_physical_units(double a, double alpha, double mass, double hbar);

  static BarrierParams dirichlet(double a) { return {a, std::numeric_limits<double>::infinity()}; }

  double a() const { return a_; }
  double alpha() const { return alpha_; }
  bool is_dirichlet() const;
  bool is_free() const { return alpha_ == 0.0; }
  /// a * alpha, the only dimensionless combination.
  double a_alpha() const { return a_ * alpha_; }

 private:
  double a_;
  double alpha_;
};

enum class Parity { Even, Odd };

struct EigenstateInf {
  int n;
  Parity parity;
  double k_n;
};

EigenstateInf make_eigenstate(int n, const BarrierParams& params);

/// (n pi / 2a)^2.
double eigen_energy_inf(int n, const BarrierParams& params);

double eigenstate_eval(const EigenstateInf& state, const BarrierParams& params, double x);

/// ell(k) = 2 pi sqrt(a) (e^{2ika} + 1) / (pi^2 - 4 k^2 a^2), the edge overlap of psi_1,
/// evaluated without cancellation near k = +-pi/2a.
cplx psi1_edge_overlap(cplx k, double a);

/// Fourier transform (2 pi)^{-1/2} int e^{-i omega x} psi_1(x) dx.
cplx eigenstate_fourier_psi1(const BarrierParams& params, double omega);

/// 8a sqrt(-pi i) / (sqrt(t) pi^3), the leading free-evolution survival amplitude of psi_1.
cplx free_decay_reference(const BarrierParams& params, double t);

/// (e^z - 1)/z and (e^z - 1 - z)/z^2, both accurate at small |z|.
cplx phi1(cplx z);
cplx phi2(cplx z);

}  // namespace dbarrier
