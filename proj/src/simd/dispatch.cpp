#include <cstdlib>
#include <cstring>

#include "dbarrier/simd/kernels.hpp"

namespace dbarrier::simd {

bool avx2_available() {
#if defined(DBARRIER_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() {
  // DBARRIER_SIMD=scalar pins the reference kernels.
  static const Isa isa = [] {
    const char* env = std::getenv("DBARRIER_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
    return avx2_available() ? Isa::Avx2 : Isa::Scalar;
  }();
  return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void tridiag_apply(const cplx* diag, cplx off, const cplx* x, cplx* y, std::size_t n) {
  if (active_isa() == Isa::Avx2) return avx2::tridiag_apply(diag, off, x, y, n);
  scalar::tridiag_apply(diag, off, x, y, n);
}

cplx complex_dot(const cplx* a, const cplx* b, std::size_t n) {
  if (active_isa() == Isa::Avx2) return avx2::complex_dot(a, b, n);
  return scalar::complex_dot(a, b, n);
}

double norm2(const cplx* a, std::size_t n) {
  if (active_isa() == Isa::Avx2) return avx2::norm2(a, n);
  return scalar::norm2(a, n);
}

cplx weighted_sum(const double* w, const cplx* v, std::size_t n) {
  if (active_isa() == Isa::Avx2) return avx2::weighted_sum(w, v, n);
  return scalar::weighted_sum(w, v, n);
}

}  // namespace dbarrier::simd
