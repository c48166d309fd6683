#pragma once

#include <cstdint>

#include "dbarrier/types.hpp"

namespace dbarrier {

/// Branch m of the Lambert function, W_m(z) e^{W_m(z)} = z.
///
/// Values on the branch cuts are the limits from above, so an argument with
/// Im z = -0.0 is treated as +0.0. Throws BranchPointError for m != 0 at z = 0
/// and ConvergenceError if Halley refinement fails or lands on another branch.
cplx lambert_w(BranchIndex m, cplx z);

/// W_m(z) given only log z. Used when z itself would overflow a double,
/// e.g. z = x e^x with x > 700. Solves w + Log w = log_z + 2 pi i m.
cplx lambert_w_from_log(BranchIndex m, cplx log_z);

/// Partial sum of sum_{n>=1} (-n)^{n-1}/n! z^n. Requires |z| < 1/e.
cplx lambert_w_series_principal(cplx z, int n_terms);

/// Large-argument expansion
///   W = L1 - L2 + sum_{k=0}^{K} sum_{j=1}^{J} c_kj L2^j / L1^{k+j},
/// with L1 = log z + 2 pi i m, L2 = log L1 and c_kj = (-1)^k/j! [k+j, k+1].
cplx lambert_w_asymptotic_seed(BranchIndex m, cplx z, int K, int J);

/// Same expansion driven by a precomputed L1.
cplx lambert_w_asymptotic_from_l1(cplx l1, int K, int J);

/// Unsigned Stirling number of the first kind [n, k].
std::uint64_t stirling_cycle(unsigned n, unsigned k);

/// Branch label of a root w of w e^w = z, i.e. round((Im(w + Log w) - Arg z) / 2 pi).
/// On the real segment (-1/e, 0) a real w < -1 is reported as -1.
int lambert_w_branch_of(cplx w, cplx z);

}  // namespace dbarrier
