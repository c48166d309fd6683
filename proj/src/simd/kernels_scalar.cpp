#include "dbarrier/simd/kernels.hpp"

namespace dbarrier::simd::scalar {

namespace {
// Plain complex product; std::complex operator* goes through the NaN-recovering libgcc helper.
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}
}  // namespace

void tridiag_apply(const cplx* diag, cplx off, const cplx* x, cplx* y, std::size_t n) {
  if (n == 0) return;
  if (n == 1) {
    y[0] = mul(diag[0], x[0]);
    return;
  }
  y[0] = mul(diag[0], x[0]) + mul(off, x[1]);
  for (std::size_t j = 1; j + 1 < n; ++j) y[j] = mul(diag[j], x[j]) + mul(off, x[j - 1] + x[j + 1]);
  y[n - 1] = mul(diag[n - 1], x[n - 1]) + mul(off, x[n - 2]);
}

cplx complex_dot(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    re += a[j].real() * b[j].real() + a[j].imag() * b[j].imag();
    im += a[j].real() * b[j].imag() - a[j].imag() * b[j].real();
  }
  return {re, im};
}

double norm2(const cplx* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += a[j].real() * a[j].real() + a[j].imag() * a[j].imag();
  return s;
}

cplx weighted_sum(const double* w, const cplx* v, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    re += w[j] * v[j].real();
    im += w[j] * v[j].imag();
  }
  return {re, im};
}

}  // namespace dbarrier::simd::scalar
