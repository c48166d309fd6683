#include <cmath>

#include "dbarrier/barrier_model.hpp"
#include "dbarrier/errors.hpp"
#include "dbarrier/quadrature.hpp"
#include "dbarrier/resolvent_kernel.hpp"
#include "dbarrier/resonance_solver.hpp"
#include "doctest.h"

using namespace dbarrier;

namespace {

// u(x) = int K(x, y; k) psi_1(y) dy, split at y = x where the kernel has a kink.
cplx apply_kernel(double x, cplx k, const BarrierParams& p) {
  const EigenstateInf s = make_eigenstate(1, p);
  const auto f = [&](double y) { return kernel_eval({x, y, k}, p) * eigenstate_eval(s, p, y); };
  const double a = p.a();
  const auto& rule = gauss_legendre(30);
  if (x <= -a || x >= a) return integrate_fixed(f, -a, a, rule);
  return integrate_fixed(f, -a, x, rule) + integrate_fixed(f, x, a, rule);
}

}  // namespace

TEST_CASE("g has poles at the resonances and at k = 0") {
  const BarrierParams p(0.5, 10.0);
  CHECK_THROWS_AS(g_of_k(0.0, p), PoleError);
  for (int n = 1; n <= 6; ++n) {
    const cplx k = resonance_energy(n, p).k;
    CHECK(g_denominator_normalized(k, p) <= 1e-13);
    CHECK_THROWS_AS(g_of_k(k, p), PoleError);
    CHECK_NOTHROW(g_of_k(k + 1e-6, p));
  }
  CHECK_THROWS_AS(g_of_k(1.0, BarrierParams::dirichlet(0.5)), DomainError);
}

TEST_CASE("g from Q") {
  const BarrierParams p(0.7, 3.0);
  for (int i = 0; i < 12; ++i) {
    const cplx k(0.4 + 0.9 * i, 0.3 - 0.1 * i);
    CHECK(std::abs(g_of_k(k, p) * (-2.0 * k * g_denominator_q(k, p)) - 1.0) <= 1e-13);
  }
}

TEST_CASE("g decays like -1/(8k^3) on the real axis") {
  const BarrierParams p(0.5, 10.0);
  for (double k : {1e3, 1e4, 1e5}) {
    const cplx ratio = g_of_k(k, p) * (-8.0 * k * k * k);
    CHECK(std::abs(ratio - 1.0) <= 2.0 * p.alpha() / k);
  }
}

TEST_CASE("residue of g") {
  for (double alpha : {1.0, 10.0, 100.0}) {
    const BarrierParams p(0.5, alpha);
    for (int n = 1; n <= 4; ++n) {
      const cplx kp = resonance_energy(n, p).k;
      // Mean of (k - kp) g(k) over a small circle.
      const double r = 1e-4 * std::abs(kp);
      cplx mean = 0.0;
      const int pts = 64;
      for (int j = 0; j < pts; ++j) {
        const cplx d = std::polar(r, 2.0 * kPi * (j + 0.5) / pts);
        mean += d * g_of_k(kp + d, p);
      }
      mean /= static_cast<double>(pts);
      CHECK(std::abs(mean - g_residue(kp, p)) <= 1e-8 * std::abs(g_residue(kp, p)));
    }
  }
}

TEST_CASE("kernel symmetry and free limit") {
  const BarrierParams p(0.5, 4.0);
  const double xs[] = {-1.3, -0.5, -0.2, 0.0, 0.31, 0.5, 0.9};
  for (double x : xs)
    for (double y : xs) {
      const cplx k(1.7, 0.4);
      CHECK(std::abs(kernel_eval({x, y, k}, p) - kernel_eval({y, x, k}, p)) <= 1e-14);
      const BarrierParams weak(0.5, 1e-9);
      CHECK(std::abs(kernel_eval({x, y, k}, weak) - free_kernel(x, y, k)) <= 1e-8);
    }
  CHECK(free_kernel(0.2, -0.3, 2.0) == std::exp(cplx(0.0, 1.0)) * cplx(0.0, 0.25));
  CHECK_THROWS_AS(free_kernel(0.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(kernel_eval({0.0, 0.0, 0.0}, p), DomainError);
}

TEST_CASE("kernel inverts H - k^2") {
  const BarrierParams p(0.5, 3.0);
  const EigenstateInf s = make_eigenstate(1, p);
  for (const cplx k : {cplx(0.0, 2.0), cplx(1.5, 0.8)}) {
    // Away from the deltas: -u'' - k^2 u = psi_1.
    const double h = 1e-3;
    for (double x : {-0.9, -0.3, 0.0, 0.2, 0.8}) {
      const cplx u0 = apply_kernel(x, k, p);
      const cplx upp = (apply_kernel(x + h, k, p) - 2.0 * u0 + apply_kernel(x - h, k, p)) / (h * h);
      const cplx lhs = -upp - k * k * u0;
      CHECK(std::abs(lhs - eigenstate_eval(s, p, x)) <= 1e-5);
    }
    // At the deltas: u is continuous and u'(a+) - u'(a-) = alpha u(a).
    for (double a : {-p.a(), p.a()}) {
      const cplx ua = apply_kernel(a, k, p);
      const cplx right = (-3.0 * ua + 4.0 * apply_kernel(a + h, k, p) - apply_kernel(a + 2 * h, k, p)) / (2 * h);
      const cplx left = (3.0 * ua - 4.0 * apply_kernel(a - h, k, p) + apply_kernel(a - 2 * h, k, p)) / (2 * h);
      CHECK(std::abs((right - left) - p.alpha() * ua) <= 1e-5);
      CHECK(std::abs(apply_kernel(a + 1e-9, k, p) - apply_kernel(a - 1e-9, k, p)) <= 1e-7);
    }
  }
}
