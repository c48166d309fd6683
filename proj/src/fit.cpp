#include "dbarrier/fit.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "dbarrier/errors.hpp"
#include "dbarrier/time_decay.hpp"

namespace dbarrier {

std::vector<cplx> fit_inverse_powers(const std::vector<double>& t, const std::vector<cplx>& y,
                                     const std::vector<double>& powers) {
  const auto rows = static_cast<Eigen::Index>(t.size());
  const auto cols = static_cast<Eigen::Index>(powers.size());
  if (t.size() != y.size() || rows < cols || cols == 0) throw DomainError("fit_inverse_powers: bad sizes");
  Eigen::MatrixXd A(rows, cols);
  Eigen::MatrixXd b(rows, 2);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!(t[i] > 0.0)) throw DomainError("fit_inverse_powers: t must be > 0");
    for (Eigen::Index j = 0; j < cols; ++j) A(i, j) = std::pow(t[i], -powers[j]);
    b(i, 0) = y[i].real();
    b(i, 1) = y[i].imag();
  }
  const Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < cols; ++j) A.col(j) /= scale(j);
  const Eigen::MatrixXd x = A.colPivHouseholderQr().solve(b);
  std::vector<cplx> c(powers.size());
  for (Eigen::Index j = 0; j < cols; ++j) c[j] = cplx(x(j, 0), x(j, 1)) / scale(j);
  return c;
}

double loglog_slope(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 2) throw DomainError("loglog_slope: need two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("loglog_slope: data must be > 0");
    const double lx = std::log(t[i]), ly = std::log(y[i]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  const double n = static_cast<double>(t.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

AsymptoticFit fit_asymptotics(const BarrierParams& params, double t_lo, double t_hi, int n, int M) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo) || n < 4) throw DomainError("fit_asymptotics: need 0 < t_lo < t_hi, n >= 4");
  const TestFunction psi1 = TestFunction::eigenstate(1);
  const SpectralAmplitude amp(psi1, psi1, params);
  AsymptoticFit fit;
  std::vector<cplx> rest;
  std::vector<double> rem;
  const cplx c_alpha = c_alpha_closed(params);
  for (int i = 0; i < n; ++i) {
    const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (n - 1));
    const cplx r = f_alpha_contour(amp, t) - residue_sum(amp, t, M).value;
    fit.t.push_back(t);
    rest.push_back(r);
    rem.push_back(std::abs(r - c_alpha / (t * std::sqrt(t))));
  }
  const std::vector<cplx> c = fit_inverse_powers(fit.t, rest, {0.5, 1.5, 2.5});
  fit.c_half = c[0];
  fit.c_three_halves = c[1];
  fit.c_five_halves = c[2];
  fit.remainder_slope = loglog_slope(fit.t, rem);
  return fit;
}

}  // namespace dbarrier
