// Compiled with -mavx2 -mfma; only reached through the runtime dispatcher.
#include "dbarrier/simd/kernels.hpp"

#if defined(DBARRIER_HAVE_AVX2_TU)
#include <immintrin.h>

namespace dbarrier::simd::avx2 {

namespace {

// Two complex numbers per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d are = _mm256_movedup_pd(a);
  const __m256d aim = _mm256_permute_pd(a, 0xF);
  const __m256d bsw = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bsw));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void tridiag_apply(const cplx* diag, cplx off, const cplx* x, cplx* y, std::size_t n) {
  if (n < 4) {
    scalar::tridiag_apply(diag, off, x, y, n);
    return;
  }
  y[0] = diag[0] * x[0] + off * x[1];
  const __m256d o = _mm256_setr_pd(off.real(), off.imag(), off.real(), off.imag());
  std::size_t j = 1;
  for (; j + 2 < n; j += 2) {
    const __m256d nb = _mm256_add_pd(load2(x + j - 1), load2(x + j + 1));
    const __m256d r = _mm256_add_pd(cmul(load2(diag + j), load2(x + j)), cmul(o, nb));
    store2(y + j, r);
  }
  for (; j + 1 < n; ++j) y[j] = diag[j] * x[j] + off * (x[j - 1] + x[j + 1]);
  y[n - 1] = diag[n - 1] * x[n - 1] + off * x[n - 2];
}

cplx complex_dot(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc_re = _mm256_setzero_pd();  // [ar br, ai bi, ...]
  __m256d acc_im = _mm256_setzero_pd();  // [ar bi, ai br, ...]
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d va = load2(a + j);
    const __m256d vb = load2(b + j);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    acc_im = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), acc_im);
  }
  alignas(32) double im_parts[4];
  _mm256_store_pd(im_parts, acc_im);
  double re = hsum(acc_re);
  double im = (im_parts[0] - im_parts[1]) + (im_parts[2] - im_parts[3]);
  for (; j < n; ++j) {
    re += a[j].real() * b[j].real() + a[j].imag() * b[j].imag();
    im += a[j].real() * b[j].imag() - a[j].imag() * b[j].real();
  }
  return {re, im};
}

double norm2(const cplx* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d v = load2(a + j);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; j < n; ++j) s += a[j].real() * a[j].real() + a[j].imag() * a[j].imag();
  return s;
}

cplx weighted_sum(const double* w, const cplx* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d ww = _mm256_setr_pd(w[j], w[j], w[j + 1], w[j + 1]);
    acc = _mm256_fmadd_pd(ww, load2(v + j), acc);
  }
  alignas(32) double p[4];
  _mm256_store_pd(p, acc);
  double re = p[0] + p[2], im = p[1] + p[3];
  for (; j < n; ++j) {
    re += w[j] * v[j].real();
    im += w[j] * v[j].imag();
  }
  return {re, im};
}

}  // namespace dbarrier::simd::avx2

#else

namespace dbarrier::simd::avx2 {

void tridiag_apply(const cplx* diag, cplx off, const cplx* x, cplx* y, std::size_t n) {
  scalar::tridiag_apply(diag, off, x, y, n);
}
cplx complex_dot(const cplx* a, const cplx* b, std::size_t n) { return scalar::complex_dot(a, b, n); }
double norm2(const cplx* a, std::size_t n) { return scalar::norm2(a, n); }
cplx weighted_sum(const double* w, const cplx* v, std::size_t n) { return scalar::weighted_sum(w, v, n); }

}  // namespace dbarrier::simd::avx2

#endif
