#include "dbarrier/time_decay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "dbarrier/errors.hpp"
#include "dbarrier/quadrature.hpp"

namespace dbarrier {

namespace {

const cplx kRay = std::polar(1.0, -kPi / 4.0);        // e^{-i pi/4}
const cplx kRayInv = std::polar(1.0, kPi / 4.0);

void require_positive_time(double t, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(who) + ": t must be finite and > 0");
}

struct Pole {
  cplx k;
  cplx residue;
  double beta;
  Family family;
  BranchIndex m;
};

// Calls visit(pole) for every physical pole of F in the order m = -1, -2, ... per family,
// until visit returns false or max_poles is reached.
template <class Visit>
void for_each_pole(const SpectralAmplitude& amp, int max_poles, Visit&& visit) {
  for (Family fam : amp.pole_families()) {
    for (int j = 1; j <= max_poles; ++j) {
      const cplx k = resonance_k(fam, -j, amp.params());
      if (!(k.real() > 0.0)) {
        // Anti-bound state on the imaginary axis: never inside the swept sector.
        if (!visit(Pole{k, 0.0, 0.0, fam, -j}, false)) break;
        continue;
      }
      const double beta = beta_weight(k * k);
      if (!visit(Pole{k, amp.residue(k), beta, fam, -j}, true)) break;
    }
  }
}

// Absolute accuracy a panel can reach when the integrand is built from terms of size mag(s).
template <class Mag>
double noise_floor(Mag&& mag, double lo, double hi, bool with_ends = false) {
  double scale = 0.0;
  // Interior points by default: panel ends on the ray may sit on a pole.
  for (int j = 0; j < 9; ++j) scale = std::max(scale, mag(lo + (hi - lo) * (j + 0.5) / 9.0));
  if (with_ends) scale = std::max({scale, mag(lo), mag(hi)});
  return std::max(1e-18, 1e-14 * scale * (hi - lo));
}

// A pole closer to the ray than this (in the s coordinate) is passed above by a local bump.
constexpr double kNearRay = 0.25;

// Path s(tau) = tau + i h (1 - ((tau - c)/d)^2) on [c - d, c + d].
struct Bump {
  double c;
  double d;
  double h;
};

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::Contour: return "contour";
    case Method::Direct: return "direct";
    case Method::Tdse: return "tdse";
    case Method::Asymptotic: return "asymptotic";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "contour") return Method::Contour;
  if (name == "direct") return Method::Direct;
  if (name == "tdse") return Method::Tdse;
  if (name == "asymptotic") return Method::Asymptotic;
  throw DomainError("unknown method '" + name + "'");
}

double beta_weight(cplx E) {
  if (E == cplx(0.0, 0.0)) throw DomainError("beta_weight: E = 0");
  cplx r = std::sqrt(E);
  if (r.real() < 0.0) r = -r;
  const double re = std::abs(r.real());
  const double im = std::abs(r.imag());
  if (std::abs(re - im) <= 1e-12 * std::max(re, im)) return 0.5;
  return im < re ? 1.0 : 0.0;
}

double contour_min_time(const SpectralAmplitude& amp) {
  // The cancelling parts of F peak near e^{gamma^2 / 4t} on the ray, gamma = rho / sqrt 2; past
  // e^25 the rounding noise reaches 1e-5 of the result.
  const double rho = amp.growth_rate();
  return rho * rho / 200.0;
}

cplx f_alpha_contour(const SpectralAmplitude& amp, double t, const ContourOptions& opts) {
  require_positive_time(t, "f_alpha_contour");
  const double gamma = amp.growth_rate() / std::sqrt(2.0);
  if (t < contour_min_time(amp))
    throw QuadratureError("f_alpha_contour: t = " + std::to_string(t) + " is below the contour's range (t >= " +
                          std::to_string(contour_min_time(amp)) + "); use the direct method");
  double s_max = (gamma + std::sqrt(gamma * gamma + 200.0 * t)) / (2.0 * t);

  // A pole near the ray is avoided by bending the path above it. Its residue then drops out
  // whatever its beta, since bending changes which side of the path it is on: for beta = 1 the
  // pole leaves the swept sector, for beta = 1/2 the principal value plus half-residue equals
  // the bent path, for beta = 0 nothing changes.
  cplx residues = 0.0;
  std::vector<Bump> bumps;
  int quiet = 0;
  auto visit = [&](const Pole& p, bool physical) {
    const cplx E = p.k * p.k;
    const cplx phase = std::exp(-kI * E * t);
    if (physical) {
      const cplx sigma = p.k * kRayInv;
      const double rel = std::abs(sigma.imag()) / std::abs(sigma);
      if (rel <= 1e-10 && p.beta != 0.5)
        throw PoleOnRayError("f_alpha_contour: resonance within 1e-10 of the ray with beta != 1/2");
      const double c = sigma.real();
      const double d = std::min(0.5 * c, 0.5);
      if (std::abs(sigma.imag()) < kNearRay && c > 0.0 && c - d < s_max) {
        s_max = std::max(s_max, c + d);
        bumps.push_back({c, d, std::max(sigma.imag(), 0.0) + 0.5 * d});
      } else {
        residues += -2.0 * p.beta * p.residue * phase;
      }
    }
    const double mag = physical ? std::abs(p.residue * phase) : 0.0;
    quiet = mag < opts.residue_cutoff ? quiet + 1 : 0;
    return !(quiet >= 3 && -p.m >= 3);
  };
  for_each_pole(amp, opts.max_poles, visit);

  auto on_path = [&](double tau, cplx& s, cplx& ds) {
    s = tau;
    ds = 1.0;
    for (const Bump& b : bumps) {
      if (tau > b.c - b.d && tau < b.c + b.d) {
        const double u = (tau - b.c) / b.d;
        s = cplx(tau, b.h * (1.0 - u * u));
        ds = cplx(1.0, -2.0 * b.h * u / b.d);
      }
    }
  };
  auto integrand = [&](double tau) -> cplx {
    cplx s, ds;
    on_path(tau, s, ds);
    const cplx k = s * kRay;
    return (amp.F(k) + amp.F(-k)) * kRay * std::exp(-s * s * t) * ds;
  };
  auto parts = [&](double tau) {
    cplx s, ds;
    on_path(tau, s, ds);
    const cplx k = s * kRay;
    // Below the real axis k G_0 and k g G_r grow like e^{rho |s| / sqrt 2} and cancel inside F,
    // so the attainable accuracy is set by their size, not by the size of F.
    return (std::abs(amp.kG0(k)) + std::abs(amp.kgGr(k)) + std::abs(amp.kG0(-k)) + std::abs(amp.kgGr(-k))) *
           std::abs(std::exp(-s * s * t) * ds);
  };

  std::vector<double> cuts = {0.0, s_max};
  const int uniform = 8;
  for (int i = 1; i < uniform; ++i) cuts.push_back(s_max * i / uniform);
  for (const Bump& b : bumps) {
    cuts.push_back(b.c - b.d);
    cuts.push_back(b.c);
    cuts.push_back(b.c + b.d);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  cplx ray = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    ray += integrate_adaptive(integrand, cuts[i], cuts[i + 1], opts.rel_tol, noise_floor(parts, cuts[i], cuts[i + 1]));
  return ray / (kPi * kI) + residues;
}

cplx f_alpha_contour(const TestFunction& psi, const TestFunction& phi, const BarrierParams& params, double t) {
  return f_alpha_contour(SpectralAmplitude(psi, phi, params), t);
}

cplx f_alpha_direct_eps(const SpectralAmplitude& amp, double t, double eps, const DirectOptions& opts) {
  require_positive_time(t, "f_alpha_direct");
  if (t > kDirectMaxTime) throw QuadratureError("f_alpha_direct: t > 50 is outside the real-axis oracle's range");
  if (eps < 0.0) throw DomainError("f_alpha_direct: eps must be >= 0");
  const cplx z(eps, t);  // e^{-k^2 z}
  const double K = opts.k_max;
  auto G = [&](double k) { return amp.F(cplx(k, 0.0)) + amp.F(cplx(-k, 0.0)); };
  auto integrand = [&](double k) -> cplx { return G(k) * std::exp(-k * k * z); };

  // Panels between successive phase multiples of pi, plus cuts around sharp resonance peaks.
  std::vector<double> cuts;
  const std::size_t n_phase = static_cast<std::size_t>(K * K * t / kPi);
  cuts.reserve(n_phase + 64);
  for (std::size_t j = 0; j <= n_phase; ++j) cuts.push_back(std::sqrt(j * kPi / t));
  cuts.push_back(K);
  if (!amp.params().is_free()) {
    int count = 0;
    for_each_pole(amp, 64, [&](const Pole& p, bool physical) {
      // Only peaks narrower than their position need help from the panel layout.
      if (physical && p.k.real() < K && std::abs(p.k.imag()) < 0.5 * p.k.real()) {
        const double w = std::abs(p.k.imag());
        for (double f : {-4.0, -1.0, 0.0, 1.0, 4.0}) {
          const double c = p.k.real() + f * w;
          if (c > 0.0 && c < K) cuts.push_back(c);
        }
      }
      return ++count < 32;
    });
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  cplx sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double abs_tol = noise_floor(
        [&](double k) {
          // The phase k^2 t carries an absolute rounding error of order eps k^2 t.
          return (std::abs(amp.kG0(k)) + std::abs(amp.kgGr(k)) + std::abs(amp.kG0(-k)) + std::abs(amp.kgGr(-k))) *
                 std::exp(-k * k * eps) * (1.0 + k * k * t);
        },
        cuts[i], cuts[i + 1], true);
    sum += integrate_adaptive(integrand, cuts[i], cuts[i + 1], opts.rel_tol, abs_tol);
  }
  // Integration by parts for the tail beyond K.
  sum += G(K) * std::exp(-K * K * z) / (2.0 * K * z);
  return sum / (kPi * kI);
}

cplx f_alpha_direct(const SpectralAmplitude& amp, double t, const DirectOptions& opts) {
  if (!opts.eps_ladder) return f_alpha_direct_eps(amp, t, 0.0, opts);
  const double e[3] = {1e-2 * t, 1e-3 * t, 1e-4 * t};
  cplx f[3];
  for (int i = 0; i < 3; ++i) f[i] = f_alpha_direct_eps(amp, t, e[i], opts);
  // Quadratic through the three rungs, evaluated at eps = 0.
  cplx r = 0.0;
  for (int i = 0; i < 3; ++i) {
    double w = 1.0;
    for (int j = 0; j < 3; ++j)
      if (j != i) w *= (0.0 - e[j]) / (e[i] - e[j]);
    r += w * f[i];
  }
  return r;
}

cplx f_alpha_direct(const TestFunction& psi, const TestFunction& phi, const BarrierParams& params, double t) {
  return f_alpha_direct(SpectralAmplitude(psi, phi, params), t);
}

cplx watson_f0_c3(const BarrierParams& params) {
  const double a = params.a();
  return std::pow(2.0, 1.5) * a * a * a * (kPi * kPi - 8.0) * cplx(1.0, 1.0) / std::pow(kPi, 4.5);
}

cplx watson_f0_asymptotic(const BarrierParams& params, double t) {
  require_positive_time(t, "watson_f0_asymptotic");
  const double lead = 8.0 * params.a() / std::pow(kPi, 2.5);
  return lead * kRay / std::sqrt(t) + watson_f0_c3(params) / (t * std::sqrt(t));
}

std::vector<cplx> taylor_coefficients_at_zero(const SpectralAmplitude& amp, int n_even_terms) {
  if (n_even_terms < 1) throw DomainError("taylor_coefficients_at_zero: need at least one term");
  // Radius: half the distance to the nearest zero of Q that F can see.
  double nearest = 2.0;
  if (!amp.params().is_free()) {
    for (Family fam : {Family::One, Family::Two}) {
      for (int m = -3; m <= 3; ++m) {
        if (fam == Family::Two && m == 0) continue;
        try {
          nearest = std::min(nearest, std::abs(resonance_k(fam, m, amp.params())));
        } catch (const ConvergenceError&) {
        }
      }
    }
  }
  const double r = 0.5 * nearest;
  const int M = 128;
  const int order = 2 * n_even_terms;
  std::vector<cplx> samples(M);
  for (int j = 0; j < M; ++j) samples[j] = amp.F(std::polar(r, 2.0 * kPi * j / M));
  std::vector<cplx> coef(order, 0.0);
  for (int n = 0; n < order; ++n) {
    cplx s = 0.0;
    for (int j = 0; j < M; ++j) s += samples[j] * std::polar(1.0, -2.0 * kPi * n * j / M);
    coef[n] = s / (static_cast<double>(M) * std::pow(r, n));
  }
  if (order >= 3) {
    // Second derivative along the ray, central differences at h and h/2, one Richardson step.
    auto d2 = [&](double h) {
      return (amp.F(h * kRay) - 2.0 * amp.F(0.0) + amp.F(-h * kRay)) / (h * h);
    };
    const double h = 1e-3;
    const cplx fd = (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
    const cplx cauchy = 2.0 * kRay * kRay * coef[2];
    double scale = 0.0;
    for (const cplx& v : samples) scale = std::max(scale, std::abs(v));
    const double tol = 1e-6 * std::max(std::abs(cauchy), scale / (r * r));
    if (std::abs(fd - cauchy) > tol)
      throw DerivativeError("taylor_coefficients_at_zero: Cauchy and finite-difference second derivatives disagree");
  }
  return coef;
}

std::vector<cplx> watson_coefficients(const SpectralAmplitude& amp, int N) {
  const std::vector<cplx> F = taylor_coefficients_at_zero(amp, N);
  std::vector<cplx> w(N);
  cplx minus_i_pow = 1.0;
  for (int s = 0; s < N; ++s) {
    w[s] = kRay / (kPi * kI) * std::tgamma(s + 0.5) * F[2 * s] * minus_i_pow;
    minus_i_pow *= -kI;
  }
  return w;
}

cplx watson_general(const SpectralAmplitude& amp, double t, int N) {
  require_positive_time(t, "watson_general");
  const std::vector<cplx> w = watson_coefficients(amp, N);
  cplx s = 0.0;
  for (int i = 0; i < N; ++i) s += w[i] * std::pow(t, -(i + 0.5));
  return s;
}

ResidueSum residue_sum(const SpectralAmplitude& amp, double t, int M) {
  if (M < 1) throw DomainError("residue_sum: M must be >= 1");
  ResidueSum out{0.0, {}};
  for (Family fam : amp.pole_families()) {
    for (int j = 1; j <= M; ++j) {
      const cplx k = resonance_k(fam, -j, amp.params());
      const cplx E = k * k;
      ResonanceTerm term{fam, -j, k, E, 0.0, 0.0};
      if (k.real() > 0.0) {
        term.beta = beta_weight(E);
        term.c = -2.0 * amp.residue(k);
      }
      if (term.beta > 0.0) out.value += term.beta * term.c * std::exp(-kI * E * t);
      out.terms.push_back(term);
    }
  }
  return out;
}

cplx c_m_closed_psi1(cplx k, const BarrierParams& params) {
  const double a = params.a();
  const double alpha = params.alpha();
  const cplx ell = ell_closed_psi1(k, params);
  return -alpha * ell * ell / (1.0 + alpha * a * (1.0 + 2.0 * k / (kI * alpha)));
}

cplx c_alpha_closed(const BarrierParams& params) {
  if (params.is_free() || params.is_dirichlet()) throw DomainError("c_alpha: needs 0 < alpha < inf");
  const double alpha = params.alpha();
  return -std::pow(2.0, 1.5) * cplx(1.0, 1.0) * params.a() / (std::pow(kPi, 2.5) * alpha * alpha);
}

AsymptoticDecomposition survival_asymptotic(const BarrierParams& params, double t, int M) {
  require_positive_time(t, "survival_asymptotic");
  if (M < 1) throw DomainError("survival_asymptotic: M must be >= 1");
  const SpectralAmplitude amp(TestFunction::eigenstate(1), TestFunction::eigenstate(1), params);
  AsymptoticDecomposition d;
  d.t = t;
  d.c_alpha = c_alpha_closed(params);
  const std::vector<cplx> w = watson_coefficients(amp, 2);
  d.c_half = w[0];
  d.c_alpha_watson = w[1];
  d.c_half_free = 8.0 * params.a() / std::pow(kPi, 2.5) * kRay;
  d.value = d.c_alpha / (t * std::sqrt(t));
  for (int j = 1; j <= M; ++j) {
    const cplx k = resonance_k(Family::One, -j, params);
    ResonanceTerm term{Family::One, -j, k, k * k, 0.0, 0.0};
    if (k.real() > 0.0) {
      term.beta = beta_weight(term.energy);
      term.c = c_m_closed_psi1(k, params);
      d.value += term.beta * term.c * std::exp(-kI * term.energy * t);
    }
    d.resonance_terms.push_back(term);
  }
  const cplx e1 = resonance_k(Family::One, -1, params);
  const cplx e2 = resonance_k(Family::One, -2, params);
  const double beat = std::abs((e2 * e2).real() - (e1 * e1).real());
  d.t_valid_min = beat > 0.0 ? 5.0 * 2.0 * kPi / beat : std::numeric_limits<double>::infinity();
  d.valid = t >= d.t_valid_min;
  return d;
}

int configured_threads() {
  const char* env = std::getenv("DBARRIER_THREADS");
  if (env && *env) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096)
      throw DomainError(std::string("DBARRIER_THREADS must be a positive integer, got '") + env + "'");
    return static_cast<int>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

DecayCurve survival_curve(const TestFunction& psi, const TestFunction& phi, const BarrierParams& params,
                          const std::vector<double>& t_grid, Method method, const CurveOptions& opts) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    require_positive_time(t_grid[i], "survival_curve");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw DomainError("survival_curve: t grid must be strictly increasing");
  }
  if (method == Method::Tdse) return tdse_oracle(psi, phi, params, t_grid, opts.tdse);

  DecayCurve curve{params, psi, phi, t_grid, std::vector<cplx>(t_grid.size()),
                   std::vector<Method>(t_grid.size(), method)};
  if (method == Method::Asymptotic) {
    const bool psi1 = psi.kind() == TestFunction::Kind::Eigenstate && phi.kind() == TestFunction::Kind::Eigenstate &&
                      psi.n() == 1 && phi.n() == 1;
    if (!psi1) throw DomainError("survival_curve: the asymptotic method needs psi = phi = psi_1");
    if (params.is_free()) {
      for (std::size_t i = 0; i < t_grid.size(); ++i) curve.values[i] = watson_f0_asymptotic(params, t_grid[i]);
      return curve;
    }
  }
  const SpectralAmplitude amp(psi, phi, params);
  const double contour_from = contour_min_time(amp);
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    if (method == Method::Contour && t_grid[i] < contour_from) curve.method[i] = Method::Direct;
  auto eval = [&](std::size_t i) -> cplx {
    const double t = t_grid[i];
    switch (curve.method[i]) {
      case Method::Contour: return f_alpha_contour(amp, t, opts.contour);
      case Method::Direct: return f_alpha_direct(amp, t, opts.direct);
      case Method::Asymptotic: return survival_asymptotic(params, t, opts.asymptotic_terms).value;
      case Method::Tdse: break;
    }
    throw DomainError("survival_curve: unsupported method");
  };

  const int threads = std::max(1, std::min<int>(opts.threads > 0 ? opts.threads : configured_threads(),
                                                static_cast<int>(t_grid.size())));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](int w) {
    // Strided assignment; each slot is written by exactly one worker.
    for (std::size_t i = static_cast<std::size_t>(w); i < t_grid.size(); i += static_cast<std::size_t>(threads)) {
      try {
        curve.values[i] = eval(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return curve;
}

}  // namespace dbarrier
