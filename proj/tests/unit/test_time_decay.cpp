#include <cmath>
#include <cstdlib>

#include "dbarrier/errors.hpp"
#include "dbarrier/resonance_solver.hpp"
#include "dbarrier/time_decay.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace dbarrier;

namespace {

const TestFunction kPsi1 = TestFunction::eigenstate(1);
constexpr double kAlphaStar = 0.8533295494203803;  // k_{1,-1} on the ray e^{-i pi/4}

SpectralAmplitude psi1_amp(double alpha) { return {kPsi1, kPsi1, BarrierParams(0.5, alpha)}; }

}  // namespace

TEST_CASE("method names") {
  for (Method m : {Method::Contour, Method::Direct, Method::Tdse, Method::Asymptotic})
    CHECK(parse_method(method_name(m)) == m);
  CHECK_THROWS_AS(parse_method("fourier"), DomainError);
}

TEST_CASE("beta weights") {
  CHECK(beta_weight(cplx(1.0, -0.5) * cplx(1.0, -0.5)) == 1.0);
  CHECK(beta_weight(cplx(1.0, -2.0) * cplx(1.0, -2.0)) == 0.0);
  CHECK(beta_weight(cplx(1.0, -1.0) * cplx(1.0, -1.0)) == 0.5);
  CHECK(beta_weight(cplx(-1.0, 0.0)) == 0.0);
  CHECK(beta_weight(cplx(4.0, 0.0)) == 1.0);
}

TEST_CASE("contour and direct agree") {
  for (double alpha : {0.5, 1.0, 10.0, 100.0}) {
    const SpectralAmplitude amp = psi1_amp(alpha);
    for (double t : {0.05, 0.5, 2.0}) {
      INFO("alpha = " << alpha << ", t = " << t);
      CHECK(std::abs(f_alpha_contour(amp, t) - f_alpha_direct(amp, t)) <= 1e-10);
    }
  }
  // A pair without closed form. The real-axis cutoff at k = 50 truncates at the 1e-9 level.
  std::vector<double> x, v;
  for (int i = 0; i <= 40; ++i) {
    x.push_back(-0.4 + 0.7 * i / 40.0);
    const double u = (x.back() + 0.05) / 0.35;
    v.push_back(3.0 * std::pow(1.0 - u * u, 4));
  }
  const SpectralAmplitude mixed(TestFunction::sampled(x, v, 7), kPsi1, BarrierParams(0.5, 5.0));
  DirectOptions cut;
  cut.k_max = 50.0;
  CHECK(std::abs(f_alpha_contour(mixed, 0.05) - f_alpha_direct(mixed, 0.05, cut)) <= 1e-8);
}

TEST_CASE("free evolution against momentum-space quadrature") {
  const SpectralAmplitude amp = psi1_amp(0.0);
  for (const auto& r : testsupport::read_csv("free_survival_reference.csv")) {
    const cplx want(r[2], r[3]);
    INFO("t = " << r[1]);
    CHECK(std::abs(f_alpha_contour(amp, r[1]) - want) <= 1e-12);
    if (r[1] <= 5.0) CHECK(std::abs(f_alpha_direct(amp, r[1]) - want) <= 1e-10);
  }
}

TEST_CASE("contour is continuous through the ray crossing") {
  const BarrierParams p(0.5, kAlphaStar);
  const cplx k = resonance_k(Family::One, -1, p);
  REQUIRE(std::abs(k.real() + k.imag()) <= 1e-12 * std::abs(k));
  CHECK(beta_weight(k * k) == 0.5);
  for (double t : {0.3, 1.0, 3.0}) {
    const cplx mid = f_alpha_contour(psi1_amp(kAlphaStar), t);
    CHECK(std::abs(f_alpha_contour(psi1_amp(kAlphaStar * (1 + 1e-6)), t) - mid) <= 1e-5);
    CHECK(std::abs(f_alpha_contour(psi1_amp(kAlphaStar * (1 - 1e-6)), t) - mid) <= 1e-5);
    CHECK(std::abs(f_alpha_direct(psi1_amp(kAlphaStar), t) - mid) <= 1e-10);
  }
}

TEST_CASE("pole too close to the ray to classify") {
  // Walk alpha off alpha* until the pole sits between the beta tolerance and the ray tolerance.
  bool found = false;
  for (double eps = 1e-13; eps < 1e-8 && !found; eps *= 1.5) {
    const BarrierParams p(0.5, kAlphaStar * (1.0 + eps));
    const cplx k = resonance_k(Family::One, -1, p);
    const double off = std::abs(k.real() + k.imag()) / (std::sqrt(2.0) * std::abs(k));
    if (off <= 1e-10 && beta_weight(k * k) != 0.5) {
      found = true;
      CHECK_THROWS_AS(f_alpha_contour(psi1_amp(p.alpha()), 1.0), PoleOnRayError);
    }
  }
  CHECK(found);
}

TEST_CASE("contour refuses times below its range") {
  CHECK_THROWS_AS(f_alpha_contour(psi1_amp(10.0), 1e-3), QuadratureError);
  CHECK_THROWS_AS(f_alpha_contour(psi1_amp(10.0), 0.0), DomainError);
  CHECK_THROWS_AS(f_alpha_direct(psi1_amp(10.0), 60.0), QuadratureError);
  CHECK_THROWS_AS(f_alpha_direct(psi1_amp(10.0), -1.0), DomainError);
}

TEST_CASE("survival amplitude is bounded by one") {
  for (double alpha : {0.0, 1.0, 10.0}) {
    const SpectralAmplitude amp = psi1_amp(alpha);
    for (double t : {1e-3, 0.01, 0.1}) CHECK(std::abs(f_alpha_direct(amp, t)) <= 1.0 + 1e-12);
    for (double t : {0.5, 5.0, 50.0, 500.0}) CHECK(std::abs(f_alpha_contour(amp, t)) <= 1.0 + 1e-12);
  }
  // Short times: 1 - i pi^2 t, the barrier term vanishing with psi_1(+-a). The kinks of psi_1 at
  // +-a make <H^2> infinite, so the next correction is O(t^{3/2}) rather than O(t^2).
  auto gap = [](double t) { return std::abs(f_alpha_direct(psi1_amp(10.0), t) - cplx(1.0, -kPi * kPi * t)); };
  CHECK(gap(1e-5) / gap(4e-5) == doctest::Approx(0.125).epsilon(0.05));
}

TEST_CASE("eps ladder converges to the plain real-axis integral") {
  const SpectralAmplitude amp = psi1_amp(10.0);
  DirectOptions ladder;
  ladder.eps_ladder = true;
  CHECK(std::abs(f_alpha_direct(amp, 1.0, ladder) - f_alpha_direct(amp, 1.0)) <= 1e-6);
}

TEST_CASE("residue terms and closed-form coefficients") {
  for (double alpha : {1.0, 10.0, 100.0}) {
    const BarrierParams p(0.5, alpha);
    const SpectralAmplitude amp = psi1_amp(alpha);
    const ResidueSum rs = residue_sum(amp, 1.0, 6);
    REQUIRE(rs.terms.size() == 6);
    cplx total = 0.0;
    for (const ResonanceTerm& term : rs.terms) {
      CHECK(term.family == Family::One);
      CHECK(std::abs(term.c + 2.0 * amp.residue(term.k)) <= 1e-14 * std::abs(term.c));
      CHECK(testsupport::rel_err(c_m_closed_psi1(term.k, p), term.c) <= 1e-10);
      total += term.beta * term.c * std::exp(-kI * term.energy);
    }
    CHECK(std::abs(total - rs.value) <= 1e-15);
  }
}

TEST_CASE("Watson expansion of the free amplitude") {
  const BarrierParams p(0.5, 0.0);
  const SpectralAmplitude amp = psi1_amp(0.0);
  const std::vector<cplx> w = watson_coefficients(amp, 2);
  CHECK(std::abs(w[0] - 8.0 * 0.5 / std::pow(kPi, 2.5) * std::polar(1.0, -kPi / 4)) <= 1e-12);
  CHECK(std::abs(w[1] - watson_f0_c3(p)) <= 1e-10);
  // Remainder is O(t^{-5/2}).
  double prev = 0.0;
  for (double t : {50.0, 100.0, 200.0, 400.0}) {
    const double r = std::abs(f_alpha_contour(amp, t) - watson_f0_asymptotic(p, t)) * std::pow(t, 2.5);
    if (prev > 0.0) CHECK(r == doctest::Approx(prev).epsilon(0.1));
    prev = r;
  }
}

TEST_CASE("Taylor coefficients at zero") {
  const SpectralAmplitude amp = psi1_amp(3.0);
  const std::vector<cplx> c = taylor_coefficients_at_zero(amp, 3);
  REQUIRE(c.size() >= 5);
  CHECK(std::abs(c[0]) <= 1e-13);
  const double h = 1e-3;
  const cplx d2 = (amp.F(h) - 2.0 * amp.F(0.0) + amp.F(-h)) / (h * h);
  CHECK(std::abs(d2 / 2.0 - c[2]) <= 1e-5 * std::max(1.0, std::abs(c[2])));
  CHECK(std::abs(watson_general(amp, 100.0, 2) - (watson_coefficients(amp, 2)[0] * 0.1 +
                                                  watson_coefficients(amp, 2)[1] * 1e-3)) <= 1e-15);
}

TEST_CASE("asymptotic decomposition") {
  for (double alpha : {1.0, 10.0, 100.0}) {
    const BarrierParams p(0.5, alpha);
    const AsymptoticDecomposition d = survival_asymptotic(p, 100.0);
    INFO("alpha = " << alpha);
    CHECK(testsupport::rel_err(d.c_alpha_watson, d.c_alpha) <= 1e-6);
    CHECK(std::abs(d.c_half) <= 1e-12);
    CHECK(d.valid == (100.0 >= d.t_valid_min));
    for (const auto& term : d.resonance_terms) CHECK(term.k.imag() < 0.0);
  }
  CHECK(std::abs(c_alpha_closed(BarrierParams(0.5, 10.0))) == doctest::Approx(0.00114329).epsilon(1e-5));
  // (f - resonance sum) t^{3/2} tends to c_alpha.
  const BarrierParams p(0.5, 10.0);
  const SpectralAmplitude amp = psi1_amp(10.0);
  const double t = 400.0;
  const cplx rest = (f_alpha_contour(amp, t) - residue_sum(amp, t, 12).value) * std::pow(t, 1.5);
  CHECK(testsupport::rel_err(rest, c_alpha_closed(p)) <= 0.05);
  CHECK_THROWS_AS(survival_asymptotic(p, 100.0, 0), DomainError);
}

TEST_CASE("weak barrier approaches free evolution") {
  const SpectralAmplitude weak = psi1_amp(1e-3), free = psi1_amp(0.0);
  for (double t = 1.0; t <= 10.0; t += 1.0) {
    const cplx f0 = f_alpha_contour(free, t);
    CHECK(std::abs(f_alpha_contour(weak, t) - f0) <= 0.01 * std::abs(f0));
  }
}

TEST_CASE("crossover window") {
  for (const auto& r : testsupport::read_csv("crossover_reference.csv")) {
    const BarrierParams p(r[0], r[1]);
    const CrossoverWindow w = crossover_window(p);
    INFO("a = " << r[0] << ", alpha = " << r[1]);
    REQUIRE(w.nonempty);
    CHECK(testsupport::rel_err(w.t1, r[2]) <= 1e-12);
    CHECK(testsupport::rel_err(w.t2, r[3]) <= 1e-12);
    for (double t : {w.t1, w.t2})
      CHECK(crossover_power_term(p, t) == doctest::Approx(crossover_exponential_term(p, t)).epsilon(1e-10));
    const double mid = std::sqrt(w.t1 * w.t2);
    CHECK(crossover_power_term(p, mid) < crossover_exponential_term(p, mid));
  }
  CHECK(crossover_threshold() == doctest::Approx(0.634791).epsilon(1e-6));
  CHECK_FALSE(crossover_window(BarrierParams(1.0, 0.5)).nonempty);
  CHECK(std::isnan(crossover_window(BarrierParams(1.0, 0.5)).t1));
  const CrossoverWindow deg = crossover_window(BarrierParams(1.0, 1.0));
  CHECK(deg.degenerate);
  CHECK(std::isinf(deg.t2));
  CHECK_THROWS_AS(crossover_window(BarrierParams(1.0, 0.0)), DomainError);
}

TEST_CASE("TDSE oracle") {
  const BarrierParams p(0.5, 10.0);
  const std::vector<double> grid = {0.5, 1.0, 2.0};
  const TdseRun run = tdse_run(kPsi1, kPsi1, p, grid, 0.005, 0.002, 40.0);
  for (double n : run.norm) CHECK(std::abs(n - run.norm.front()) <= 1e-10);
  const SpectralAmplitude amp = psi1_amp(10.0);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(run.overlap[i] - f_alpha_contour(amp, grid[i])) <= 1e-3);

  const std::vector<double> at5 = {5.0};
  const DecayCurve free = tdse_oracle(kPsi1, kPsi1, BarrierParams(0.5, 0.0), at5);
  const auto rows = testsupport::read_csv("free_survival_reference.csv");
  for (const auto& r : rows)
    if (r[1] == 5.0) CHECK(std::abs(free.values[0] - cplx(r[2], r[3])) <= 1e-3);
  CHECK_THROWS_AS(tdse_oracle(kPsi1, kPsi1, BarrierParams::dirichlet(0.5), at5), DomainError);
  TdseOptions coarse;
  coarse.dx = 0.25;
  coarse.dt = 0.2;
  CHECK_THROWS_AS(tdse_oracle(kPsi1, kPsi1, p, grid, coarse), StabilityError);
}

TEST_CASE("survival curves and worker threads") {
  const BarrierParams p(0.5, 10.0);
  const std::vector<double> grid = {0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 4.0};
  CurveOptions one, three;
  one.threads = 1;
  three.threads = 3;
  const DecayCurve a = survival_curve(kPsi1, kPsi1, p, grid, Method::Contour, one);
  const DecayCurve b = survival_curve(kPsi1, kPsi1, p, grid, Method::Contour, three);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(a.values[i] == b.values[i]);
  CHECK(a.method.front() == Method::Contour);

  const DecayCurve asym = survival_curve(kPsi1, kPsi1, p, {100.0}, Method::Asymptotic);
  CHECK(asym.values[0] == survival_asymptotic(p, 100.0).value);
  CHECK_THROWS_AS(survival_curve(kPsi1, TestFunction::eigenstate(2), p, {100.0}, Method::Asymptotic), DomainError);
  CHECK_THROWS_AS(survival_curve(kPsi1, kPsi1, p, {1.0, 1.0}, Method::Contour), DomainError);
  CHECK_THROWS_AS(survival_curve(kPsi1, kPsi1, p, {0.0, 1.0}, Method::Contour), DomainError);
  // Below the contour's range the direct method stands in.
  CHECK(contour_min_time(psi1_amp(10.0)) == doctest::Approx(0.005));
  const DecayCurve mixed = survival_curve(kPsi1, kPsi1, p, {1e-3, 1.0}, Method::Contour, three);
  CHECK(mixed.method[0] == Method::Direct);
  CHECK(mixed.method[1] == Method::Contour);
  CHECK(mixed.values[0] == f_alpha_direct(psi1_amp(10.0), 1e-3));
  // Failures inside a worker reach the caller.
  CHECK_THROWS_AS(survival_curve(kPsi1, kPsi1, p, {1.0, 60.0}, Method::Direct, three), QuadratureError);
}

TEST_CASE("DBARRIER_THREADS") {
  const char* saved = std::getenv("DBARRIER_THREADS");
  const std::string keep = saved ? saved : "";
  setenv("DBARRIER_THREADS", "3", 1);
  CHECK(configured_threads() == 3);
  for (const char* bad : {"0", "-2", "abc", "4x", "100000"}) {
    setenv("DBARRIER_THREADS", bad, 1);
    CHECK_THROWS_AS(configured_threads(), DomainError);
  }
  unsetenv("DBARRIER_THREADS");
  CHECK(configured_threads() >= 1);
  if (saved) setenv("DBARRIER_THREADS", keep.c_str(), 1);
}
