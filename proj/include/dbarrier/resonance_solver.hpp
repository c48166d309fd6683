#pragma once

#include <vector>

#include "dbarrier/barrier_model.hpp"
#include "dbarrier/types.hpp"

namespace dbarrier {

/// Sign choice in e^{2ika} alpha -+ i(2k + i alpha) = 0. Family 1 takes the minus sign.
enum class Family { One = 1, Two = 2 };

struct Resonance {
  Family family;
  BranchIndex branch_m;
  cplx k;
  cplx energy;      // k * k
  double residual;  // |f_family(k)|
  bool physical;    // Re k > 0 and Im k < 0
};

struct ResonanceTable {
  BarrierParams params;
  std::vector<Resonance> entries;  // entries[n - 1]
};

/// k_{j,m} = (i/2a) [W_m(-+ a alpha e^{a alpha}) - a alpha].
cplx resonance_k(Family family, BranchIndex m, const BarrierParams& params);

/// Raw (family, m) record. Branches m >= 0 are returned with physical = false.
Resonance resonance(Family family, BranchIndex m, const BarrierParams& params);

/// The n-th resonance: odd n -> (1, -(n+1)/2), even n -> (2, -n/2).
Resonance resonance_energy(int n, const BarrierParams& params);

ResonanceTable resonance_table(const BarrierParams& params, int n_max);

/// f_1(k) = alpha e^{2ika} - i(2k + i alpha), f_2(k) = alpha e^{2ika} + i(2k + i alpha).
cplx resonance_function(cplx k, Family family, const BarrierParams& params);
cplx resonance_function_derivative(cplx k, Family family, const BarrierParams& params);
double resonance_residual(cplx k, Family family, const BarrierParams& params);

/// alpha^2 e^{4ika} + 4k^2 + 4ik alpha - alpha^2 = f_1 f_2.
cplx resonance_product_form(cplx k, const BarrierParams& params);

/// Lambert branch that a root k of family j corresponds to, via w = a alpha - 2iak.
int resonance_branch_of(cplx k, Family family, const BarrierParams& params);

/// Newton on f_family. Stops at |f| <= 1e-12 max(1, alpha); ConvergenceError after 100 steps.
cplx refine_resonance_newton(cplx k_seed, Family family, const BarrierParams& params);

/// Large a*alpha expansion of E_{alpha,n}:
///   [(n pi/2a)(1 - 1/(a alpha) + 1/(a alpha)^2) - (i/2a) n^2 pi^2 / (2 (a alpha)^2)]^2.
cplx resonance_large_alpha(int n, const BarrierParams& params);

/// Leading terms of the same expansion: (n pi/2a)^2 - i n^3 pi^3 / (4 a^2 (a alpha)^2).
cplx resonance_large_alpha_simplified(int n, const BarrierParams& params);

}  // namespace dbarrier
