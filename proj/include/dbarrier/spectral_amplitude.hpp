#pragma once

#include <vector>

#include "dbarrier/barrier_model.hpp"
#include "dbarrier/resonance_solver.hpp"
#include "dbarrier/test_function.hpp"
#include "dbarrier/types.hpp"

namespace dbarrier {

/// l_j = int e^{ik|x +- a|} conj(psi), m_j the same with phi (upper sign for index 1).
struct AmplitudeQuartet {
  cplx ell1;
  cplx ell2;
  cplx m1;
  cplx m2;
};

/// F(k) = k [G_0(k) + g(k) G_r(k)] for a fixed test pair. ψ = φ = ψ_1 uses the closed forms
/// k G_0 = 4ia h(k) and k g G_r = alpha l^2 / D_1(k); everything else goes through quadrature.
class SpectralAmplitude {
 public:
  SpectralAmplitude(TestFunction psi, TestFunction phi, BarrierParams params);

  const BarrierParams& params() const { return params_; }
  const TestFunction& psi() const { return psi_; }
  const TestFunction& phi() const { return phi_; }
  bool uses_psi1_closed_form() const { return psi1_pair_; }

  AmplitudeQuartet quartet(cplx k) const;
  /// d/dk of each entry.
  AmplitudeQuartet quartet_derivative(cplx k) const;

  /// k G_0(k), entire in k.
  cplx kG0(cplx k) const;
  cplx Gr(cplx k) const;
  /// k g(k) G_r(k). At k = 0 uses the limit -G_r'(0) / (2 Q'(0)).
  cplx kgGr(cplx k) const;
  cplx F(cplx k) const;

  /// Residue of F at a simple zero k_p of Q.
  cplx residue(cplx k_pole) const;

  /// Resonance families that can carry poles of F: parity removes one of them
  /// when psi = phi is an eigenstate.
  std::vector<Family> pole_families() const;

  /// Growth rate rho of |F(k)| ~ exp(rho |Im k|) from the supports.
  double growth_rate() const;

 private:
  TestFunction psi_;
  TestFunction phi_;
  BarrierParams params_;
  bool psi1_pair_ = false;
};

AmplitudeQuartet amplitude_quartet(const TestFunction& psi, const TestFunction& phi, cplx k,
                                   const BarrierParams& params);

/// l(k) = 2 pi sqrt(a) (e^{2ika} + 1)/(pi^2 - 4k^2a^2), with the limits +-i sqrt(a) at k = +-pi/2a.
cplx ell_closed_psi1(cplx k, const BarrierParams& params);

/// h(k) = [iak(4k^2a^2 - pi^2) + pi^2 (1 + e^{2ika})] / (4k^2a^2 - pi^2)^2, finite at k = +-pi/2a.
cplx h_closed_psi1(cplx k, const BarrierParams& params);

/// G_0(k) = int int conj(psi(x)) phi(y) (i/2k) e^{ik|x-y|}. Throws DomainError at k = 0.
cplx G0_amplitude(const TestFunction& psi, const TestFunction& phi, cplx k, const BarrierParams& params);

/// -alpha(2k + i alpha)[l1 m1 + l2 m2] + i alpha^2 e^{2ika}[l1 m2 + l2 m1].
cplx Gr_amplitude(const AmplitudeQuartet& q, cplx k, const BarrierParams& params);
/// 2 l^2 [-alpha(2k + i alpha) +- i alpha^2 e^{2ika}] for l1 = +-l2 = m1 = +-m2 = l.
cplx Gr_even_shortcut(cplx ell, cplx k, const BarrierParams& params);
cplx Gr_odd_shortcut(cplx ell, cplx k, const BarrierParams& params);

cplx F_alpha(const TestFunction& psi, const TestFunction& phi, cplx k, const BarrierParams& params);

/// sin(z)/z.
cplx sinc(cplx z);

}  // namespace dbarrier
