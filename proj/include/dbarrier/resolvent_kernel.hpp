#pragma once

#include "dbarrier/barrier_model.hpp"
#include "dbarrier/types.hpp"

namespace dbarrier {

struct KernelPoint {
  double x;
  double y;
  cplx k;
};

/// Q(k) = (2k + i alpha)^2 + alpha^2 e^{4ika}; g(k) = -1 / (2k Q(k)).
cplx g_denominator_q(cplx k, const BarrierParams& params);

/// |Q| / (|2k + i alpha|^2 + alpha^2 |e^{4ika}|), the scale-free size of Q.
double g_denominator_normalized(cplx k, const BarrierParams& params);

/// Throws PoleError at k = 0 or when the normalized denominator is below 1e-13.
cplx g_of_k(cplx k, const BarrierParams& params);

/// Residue of g at a simple zero k_p of Q: -1 / (8 k_p [(2k_p + i alpha) + i a alpha^2 e^{4ik_p a}]).
cplx g_residue(cplx k_pole, const BarrierParams& params);

/// Free kernel (i/2k) e^{ik|x-y|}.
cplx free_kernel(double x, double y, cplx k);

/// K_alpha(x, y; k) = K_0 + g(k) (L1 + L2 + L3 + L4).
cplx kernel_eval(const KernelPoint& p, const BarrierParams& params);

}  // namespace dbarrier
