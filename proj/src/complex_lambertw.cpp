#include "dbarrier/complex_lambertw.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dbarrier/errors.hpp"

namespace dbarrier {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInvE = 0.36787944117144232159552377016146;
// e split into a double and its rounding error, for ez + 1 near the branch point.
constexpr double kEHi = 2.718281828459045;
constexpr double kELo = 1.4456468917292502e-16;
constexpr int kMaxHalley = 64;

cplx normalize_cut(cplx z) {
  // -0.0 imaginary parts would select the lower side of the cut.
  if (z.imag() == 0.0) return {z.real(), 0.0};
  return z;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// p = sqrt(2(ez + 1)) with the cancellation in ez + 1 handled in extended precision.
cplx branch_point_p(cplx z) {
  double re = std::fma(kEHi, z.real(), 1.0) + kELo * z.real();
  double im = kEHi * z.imag() + kELo * z.imag();
  return std::sqrt(2.0 * cplx(re, im));
}

cplx puiseux(cplx p) {
  static constexpr double c[] = {-1.0,
                                 1.0,
                                 -1.0 / 3.0,
                                 11.0 / 72.0,
                                 -43.0 / 540.0,
                                 769.0 / 17280.0,
                                 -221.0 / 8505.0};
  cplx s = c[6];
  for (int i = 5; i >= 0; --i) s = s * p + c[i];
  return s;
}

cplx seed(BranchIndex m, cplx z) {
  const double dist = std::abs(z + kInvE);
  if (m == 0) {
    if (std::abs(z) <= 1.0 && z.real() >= -0.25) return std::log(1.0 + z);
    if (dist < 0.5) return puiseux(branch_point_p(z));
    if (std::abs(z) <= 1.0 && std::abs(z.imag()) > 0.5) return std::log(1.0 + z);
  }
  if (dist < 0.3 && ((m == -1 && z.imag() >= 0.0) || (m == 1 && z.imag() < 0.0)))
    return puiseux(-branch_point_p(z));
  if (m == -1 && z.imag() == 0.0 && z.real() < 0.0 && z.real() > -kInvE) {
    // Real lower branch on (-1/e, 0).
    const double l1 = std::log(-z.real());
    const double l2 = std::log(-l1);
    return {l1 - l2 + l2 / l1, 0.0};
  }
  const cplx l1 = std::log(z) + cplx(0.0, kTwoPi * m);
  if (std::abs(l1) < 3.0) return lambert_w_asymptotic_from_l1(l1, 0, 0);
  return lambert_w_asymptotic_from_l1(l1, 3, 3);
}

bool on_real_lower_segment(BranchIndex m, cplx z) {
  return m == -1 && z.imag() == 0.0 && z.real() < 0.0 && z.real() > -kInvE;
}

}  // namespace

std::uint64_t stirling_cycle(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (n == 0) return 1;
  if (k == 0) return 0;
  // Row-by-row recurrence [i+1, j] = i [i, j] + [i, j-1].
  std::vector<std::uint64_t> row(n + 1, 0), next(n + 1, 0);
  std::vector<bool> big(n + 1, false), next_big(n + 1, false);
  row[0] = 1;
  for (unsigned i = 0; i < n; ++i) {
    next.assign(n + 1, 0);
    next_big.assign(n + 1, false);
    for (unsigned j = 1; j <= i + 1; ++j) {
      std::uint64_t prod = 0;
      std::uint64_t v = 0;
      bool over = (big[j] && i > 0) || big[j - 1];
      over = __builtin_mul_overflow(static_cast<std::uint64_t>(i), row[j], &prod) || over;
      over = __builtin_add_overflow(prod, row[j - 1], &v) || over;
      next[j] = v;
      next_big[j] = over;
    }
    row.swap(next);
    big.swap(next_big);
  }
  if (big[k])
    throw OverflowError("stirling_cycle(" + std::to_string(n) + ", " + std::to_string(k) +
                        ") exceeds 64 bits");
  return row[k];
}

cplx lambert_w_asymptotic_from_l1(cplx l1, int K, int J) {
  if (l1 == cplx(0.0, 0.0)) throw DomainError("lambert_w_asymptotic_seed: log z + 2 pi i m vanishes");
  if (K < 0 || J < 0) throw DomainError("lambert_w_asymptotic_seed: negative order");
  const cplx l2 = std::log(l1);
  cplx w = l1 - l2;
  if (J == 0) return w;
  const cplx inv = 1.0 / l1;
  // Summed from the smallest terms up.
  cplx sum = 0.0;
  for (int k = K; k >= 0; --k) {
    double jfact = 1.0;
    cplx l2j = 1.0;
    cplx inner = 0.0;
    for (int j = 1; j <= J; ++j) {
      jfact *= j;
      l2j *= l2;
      const double c = (k % 2 ? -1.0 : 1.0) / jfact *
                       static_cast<double>(stirling_cycle(static_cast<unsigned>(k + j),
                                                          static_cast<unsigned>(k + 1)));
      inner += c * l2j * std::pow(inv, j);
    }
    sum += inner * std::pow(inv, k);
  }
  return w + sum;
}

cplx lambert_w_asymptotic_seed(BranchIndex m, cplx z, int K, int J) {
  if (z == cplx(0.0, 0.0)) throw DomainError("lambert_w_asymptotic_seed: z = 0");
  z = normalize_cut(z);
  return lambert_w_asymptotic_from_l1(std::log(z) + cplx(0.0, kTwoPi * m), K, J);
}

cplx lambert_w_series_principal(cplx z, int n_terms) {
  if (n_terms < 1) throw DomainError("lambert_w_series_principal: n_terms must be positive");
  if (!(std::abs(z) < kInvE)) throw DomainError("lambert_w_series_principal: |z| >= 1/e");
  // Horner in z over coefficients (-n)^{n-1}/n!.
  cplx s = 0.0;
  for (int n = n_terms; n >= 1; --n) {
    const double mag = std::exp((n - 1) * std::log(static_cast<double>(n)) - std::lgamma(n + 1.0));
    const double c = (n % 2 ? 1.0 : -1.0) * mag;
    s = (s + c) * z;
  }
  return s;
}

int lambert_w_branch_of(cplx w, cplx z) {
  z = normalize_cut(z);
  // On (-1/e, 0) both W_0 and W_{-1} are real; the part below -1 belongs to W_{-1}.
  if (on_real_lower_segment(-1, z) && std::abs(w.imag()) <= 1e-12 * std::abs(w) && w.real() < -1.0) return -1;
  const double v = (std::imag(w + std::log(w)) - std::arg(z)) / kTwoPi;
  return static_cast<int>(std::lround(v));
}

cplx lambert_w(BranchIndex m, cplx z) {
  if (!finite(z)) throw DomainError("lambert_w: non-finite argument");
  z = normalize_cut(z);
  if (z == cplx(0.0, 0.0)) {
    if (m == 0) return 0.0;
    throw BranchPointError("lambert_w: z = 0 is a branch point of W_" + std::to_string(m));
  }
  if (m == 0 && std::abs(z) < 1e-8) return lambert_w_series_principal(z, 4);

  cplx w = seed(m, z);
  bool converged = false;
  for (int it = 0; it < kMaxHalley; ++it) {
    const cplx ew = std::exp(w);
    const cplx f = w * ew - z;
    const cplx w1 = w + 1.0;
    const cplx den = ew * w1 - (w + 2.0) * f / (2.0 * w1);
    if (f == cplx(0.0, 0.0) || den == cplx(0.0, 0.0)) {
      converged = true;
      break;
    }
    const cplx dw = f / den;
    w -= dw;
    if (!finite(w)) break;
    if (std::abs(dw) <= 1e-15 * std::abs(w)) {
      converged = true;
      break;
    }
  }
  const double resid = std::abs(w * std::exp(w) - z);
  if (!finite(w) || (!converged && resid > 1e-13 * std::abs(z)))
    throw ConvergenceError("lambert_w: Halley refinement did not converge for W_" + std::to_string(m));
  if (!on_real_lower_segment(m, z) && lambert_w_branch_of(w, z) != m)
    throw ConvergenceError("lambert_w: refinement left branch " + std::to_string(m));
  if (on_real_lower_segment(m, z)) w = {w.real(), 0.0};
  return w;
}

cplx lambert_w_from_log(BranchIndex m, cplx log_z) {
  if (!finite(log_z)) throw DomainError("lambert_w_from_log: non-finite argument");
  const cplx target = log_z + cplx(0.0, kTwoPi * m);
  cplx w = lambert_w_asymptotic_from_l1(target, 3, 3);
  for (int it = 0; it < kMaxHalley; ++it) {
    // Halley on g(w) = w + Log w - target.
    const cplx g = w + std::log(w) - target;
    const cplx g1 = 1.0 + 1.0 / w;
    const cplx g2 = -1.0 / (w * w);
    const cplx dw = 2.0 * g * g1 / (2.0 * g1 * g1 - g * g2);
    w -= dw;
    if (!finite(w)) break;
    if (std::abs(dw) <= 1e-15 * std::abs(w)) return w;
  }
  throw ConvergenceError("lambert_w_from_log: refinement did not converge for W_" + std::to_string(m));
}

}  // namespace dbarrier
