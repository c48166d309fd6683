#pragma once

#include <functional>
#include <vector>

#include "dbarrier/types.hpp"

namespace dbarrier {

using RealToComplex = std::function<cplx(double)>;

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n in {8, 12, 20, 30}.
const QuadratureRule& gauss_legendre(int n);

/// Globally adaptive Gauss-Kronrod (7/15) on [lo, hi]: the panel with the largest error is
/// bisected until the total is below max(rel_tol * L1, abs_tol). Throws QuadratureError when
/// the depth or the 4000-panel budget runs out more than tenfold short of that.
cplx integrate_adaptive(const RealToComplex& f, double lo, double hi, double rel_tol,
                        double abs_tol = 0.0, unsigned max_depth = 18, double* error = nullptr);

/// Fixed Gauss-Legendre sum on [lo, hi].
template <class F>
cplx integrate_fixed(const F& f, double lo, double hi, const QuadratureRule& rule) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  cplx s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

}  // namespace dbarrier
