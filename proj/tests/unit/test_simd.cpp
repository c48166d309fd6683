#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "dbarrier/simd/kernels.hpp"
#include "doctest.h"

using namespace dbarrier;

namespace {

std::vector<cplx> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& z : v) z = {u(rng), u(rng)};
  return v;
}

double scale(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i]) * std::abs(b[i]);
  return std::max(s, 1.0);
}

}  // namespace

TEST_CASE("AVX2 kernels match the scalar reference") {
  if (!simd::avx2_available()) {
    MESSAGE("AVX2 not available; equivalence test skipped");
    return;
  }
  std::mt19937_64 rng(7);
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 17u, 64u, 1001u}) {
    INFO("n = " << n);
    const auto a = random_vector(rng, n), b = random_vector(rng, n), d = random_vector(rng, n);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = a[i].real();
    const double s = scale(a, b);
    CHECK(std::abs(simd::avx2::complex_dot(a.data(), b.data(), n) - simd::scalar::complex_dot(a.data(), b.data(), n)) <=
          1e-14 * s);
    CHECK(std::abs(simd::avx2::norm2(a.data(), n) - simd::scalar::norm2(a.data(), n)) <= 1e-14 * s);
    CHECK(std::abs(simd::avx2::weighted_sum(w.data(), b.data(), n) -
                   simd::scalar::weighted_sum(w.data(), b.data(), n)) <= 1e-14 * s);
    std::vector<cplx> y1(n), y2(n);
    const cplx off(0.3, -1.7);
    simd::avx2::tridiag_apply(d.data(), off, a.data(), y1.data(), n);
    simd::scalar::tridiag_apply(d.data(), off, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-14 * 8.0);
  }
}

TEST_CASE("scalar tridiagonal product") {
  const cplx diag[3] = {1.0, 2.0, 3.0};
  const cplx x[3] = {1.0, cplx(0.0, 1.0), -1.0};
  cplx y[3];
  simd::scalar::tridiag_apply(diag, 0.5, x, y, 3);
  CHECK(y[0] == cplx(1.0, 0.5));
  CHECK(y[1] == cplx(0.0, 2.0));
  CHECK(y[2] == cplx(-3.0, 0.5));
}

TEST_CASE("dispatch honours DBARRIER_SIMD") {
  const char* env = std::getenv("DBARRIER_SIMD");
  if (env && std::strcmp(env, "scalar") == 0)
    CHECK(simd::active_isa() == simd::Isa::Scalar);
  else
    CHECK(simd::active_isa() == (simd::avx2_available() ? simd::Isa::Avx2 : simd::Isa::Scalar));
  CHECK(std::strlen(simd::isa_name(simd::active_isa())) > 0);
}
