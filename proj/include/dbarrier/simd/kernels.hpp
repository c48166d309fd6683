#pragma once

#include <cstddef>

#include "dbarrier/types.hpp"

namespace dbarrier::simd {

enum class Isa { Scalar, Avx2 };

/// Instruction set chosen at first use: AVX2+FMA when the CPU has it, scalar otherwise.
Isa active_isa();
const char* isa_name(Isa isa);
bool avx2_available();

/// y[j] = diag[j] x[j] + off (x[j-1] + x[j+1]), with x[-1] = x[n] = 0. x and y must not alias.
void tridiag_apply(const cplx* diag, cplx off, const cplx* x, cplx* y, std::size_t n);
/// sum conj(a[j]) b[j].
cplx complex_dot(const cplx* a, const cplx* b, std::size_t n);
/// sum |a[j]|^2.
double norm2(const cplx* a, std::size_t n);
/// sum w[j] v[j].
cplx weighted_sum(const double* w, const cplx* v, std::size_t n);

namespace scalar {
void tridiag_apply(const cplx* diag, cplx off, const cplx* x, cplx* y, std::size_t n);
cplx complex_dot(const cplx* a, const cplx* b, std::size_t n);
double norm2(const cplx* a, std::size_t n);
cplx weighted_sum(const double* w, const cplx* v, std::size_t n);
}  // namespace scalar

namespace avx2 {
// Only callable when avx2_available().
void tridiag_apply(const cplx* diag, cplx off, const cplx* x, cplx* y, std::size_t n);
cplx complex_dot(const cplx* a, const cplx* b, std::size_t n);
double norm2(const cplx* a, std::size_t n);
cplx weighted_sum(const double* w, const cplx* v, std::size_t n);
}  // namespace avx2

}  // namespace dbarrier::simd
