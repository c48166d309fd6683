#pragma once

#include <vector>

#include "dbarrier/barrier_model.hpp"
#include "dbarrier/types.hpp"

namespace dbarrier {

/// Least-squares y(t) ~ sum_j c_j t^{-p_j} with complex c_j (real and imaginary parts fitted
/// against the same real basis). Column-pivoted QR on the column-scaled design matrix.
std::vector<cplx> fit_inverse_powers(const std::vector<double>& t, const std::vector<cplx>& y,
                                     const std::vector<double>& powers);

/// Slope of log y against log t; DomainError for non-positive data.
double loglog_slope(const std::vector<double>& t, const std::vector<double>& y);

/// Fit of f - (residue sum) over a window, for psi = phi = psi_1.
struct AsymptoticFit {
  std::vector<double> t;
  cplx c_half;          // fitted t^{-1/2} coefficient
  cplx c_three_halves;  // fitted t^{-3/2} coefficient
  cplx c_five_halves;   // fitted t^{-5/2} coefficient
  double remainder_slope;  // log-log slope of |f - sum - c_alpha t^{-3/2}|
};

/// n log-spaced contour evaluations on [t_lo, t_hi], residue sum over M resonances.
AsymptoticFit fit_asymptotics(const BarrierParams& params, double t_lo, double t_hi, int n, int M = 12);

}  // namespace dbarrier
