#include "dbarrier/spectral_amplitude.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "dbarrier/errors.hpp"
#include "dbarrier/quadrature.hpp"
#include "dbarrier/resolvent_kernel.hpp"

namespace dbarrier {

namespace {

constexpr int kNodes = 12;
// Max |k| * width per cell, so that a degree-11 interpolant of e^{iky} is exact to rounding.
constexpr double kCellPhase = 0.5;
// Sample intervals merged into one cell for sampled data.
constexpr int kSamplesPerCell = 4;

struct Cell {
  double lo;
  double hi;
};

// S[j][l] = int_{-1}^{xi_j} L_l(eta) d eta for the Lagrange basis on the Gauss nodes.
const std::array<std::array<double, kNodes>, kNodes>& spectral_integration_matrix() {
  static const auto S = [] {
    const QuadratureRule& g = gauss_legendre(kNodes);
    std::array<std::array<double, kNodes>, kNodes> s{};
    auto basis = [&](int l, double eta) {
      double p = 1.0;
      for (int m = 0; m < kNodes; ++m)
        if (m != l) p *= (eta - g.nodes[m]) / (g.nodes[l] - g.nodes[m]);
      return p;
    };
    for (int j = 0; j < kNodes; ++j) {
      const double len = g.nodes[j] + 1.0;
      for (int l = 0; l < kNodes; ++l) {
        double acc = 0.0;
        for (int m = 0; m < kNodes; ++m) acc += g.weights[m] * basis(l, -1.0 + 0.5 * len * (g.nodes[m] + 1.0));
        s[j][l] = 0.5 * len * acc;
      }
    }
    return s;
  }();
  return S;
}

// Cells covering [lo, hi]: mandatory cuts at support ends and +-a, sample points grouped,
// then split so that every cell satisfies the phase limit for wavenumber kappa.
std::vector<Cell> layout(const TestFunction& f1, const TestFunction& f2, const BarrierParams& params, double kappa) {
  const auto s1 = f1.support(params);
  const auto s2 = f2.support(params);
  const double lo = std::min(s1.first, s2.first);
  const double hi = std::max(s1.second, s2.second);
  std::vector<double> hard = {lo, hi, s1.first, s1.second, s2.first, s2.second};
  for (double c : {-params.a(), params.a()})
    if (c > lo && c < hi) hard.push_back(c);
  std::sort(hard.begin(), hard.end());
  hard.erase(std::unique(hard.begin(), hard.end()), hard.end());

  std::vector<double> soft;
  for (const TestFunction* f : {&f1, &f2}) {
    if (f->kind() != TestFunction::Kind::Sampled) continue;
    const auto& x = f->positions();
    for (std::size_t i = 0; i < x.size(); i += kSamplesPerCell) soft.push_back(x[i]);
  }
  std::vector<double> cuts = hard;
  cuts.insert(cuts.end(), soft.begin(), soft.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double wave = kappa + std::max(f1.intrinsic_wavenumber(params), f2.intrinsic_wavenumber(params)) + 1.0;
  const double wmax = kCellPhase / wave;
  std::vector<Cell> cells;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double w = cuts[i + 1] - cuts[i];
    if (w <= 0.0) continue;
    const int pieces = std::max(1, static_cast<int>(std::ceil(w / wmax)));
    for (int p = 0; p < pieces; ++p)
      cells.push_back({cuts[i] + w * p / pieces, p + 1 == pieces ? cuts[i + 1] : cuts[i] + w * (p + 1) / pieces});
  }
  return cells;
}

// int e^{ik|x - c|} f(x) w(x) dx, w = 1 or i|x - c| for the derivative.
cplx edge_overlap_numeric(const TestFunction& f, cplx k, double c, bool derivative, const BarrierParams& params) {
  const QuadratureRule& g = gauss_legendre(kNodes);
  cplx s = 0.0;
  for (const Cell& cell : layout(f, f, params, std::abs(k))) {
    const double half = 0.5 * (cell.hi - cell.lo);
    const double mid = 0.5 * (cell.hi + cell.lo);
    for (int l = 0; l < kNodes; ++l) {
      const double x = mid + half * g.nodes[l];
      const double d = std::abs(x - c);
      cplx term = f.eval(x, params) * std::exp(kI * k * d);
      if (derivative) term *= kI * d;
      s += g.weights[l] * half * term;
    }
  }
  return s;
}

// Sinc-form overlaps for psi_n: I(k) = int e^{ikx} psi_n.
cplx eigen_fourier(int n, cplx k, const BarrierParams& params) {
  const double a = params.a();
  const double kn = n * kPi / (2.0 * a);
  const double sa = std::sqrt(a);
  if (n % 2) return sa * (sinc((k + kn) * a) + sinc((k - kn) * a));
  return kI * sa * (sinc((k - kn) * a) - sinc((k + kn) * a));
}

cplx kG0_numeric(const TestFunction& psi, const TestFunction& phi, cplx k, const BarrierParams& params) {
  const QuadratureRule& g = gauss_legendre(kNodes);
  const auto& S = spectral_integration_matrix();
  const std::vector<Cell> cells = layout(psi, phi, params, std::abs(k));
  const std::size_t nc = cells.size();
  std::vector<cplx> phi_v(nc * kNodes), psi_v(nc * kNodes);
  for (std::size_t i = 0; i < nc; ++i) {
    const double half = 0.5 * (cells[i].hi - cells[i].lo);
    const double mid = 0.5 * (cells[i].hi + cells[i].lo);
    for (int l = 0; l < kNodes; ++l) {
      const double x = mid + half * g.nodes[l];
      phi_v[i * kNodes + l] = phi.eval(x, params);
      psi_v[i * kNodes + l] = psi.eval(x, params);
    }
  }
  // inner[j] = L(x_j) + R(x_j), L(x) = int_{lo}^{x} phi(y) e^{ik(x-y)}, R(x) = int_{x}^{hi} phi(y) e^{ik(y-x)}.
  std::vector<cplx> inner(nc * kNodes, 0.0);
  cplx Lc = 0.0;
  for (std::size_t i = 0; i < nc; ++i) {
    const double half = 0.5 * (cells[i].hi - cells[i].lo);
    const double mid = 0.5 * (cells[i].hi + cells[i].lo);
    std::array<cplx, kNodes> gl;
    cplx total = 0.0;
    for (int l = 0; l < kNodes; ++l) {
      const double y = mid + half * g.nodes[l];
      gl[l] = phi_v[i * kNodes + l] * std::exp(-kI * k * (y - cells[i].lo));
      total += g.weights[l] * gl[l];
    }
    for (int j = 0; j < kNodes; ++j) {
      const double x = mid + half * g.nodes[j];
      cplx part = 0.0;
      for (int l = 0; l < kNodes; ++l) part += S[j][l] * gl[l];
      inner[i * kNodes + j] += std::exp(kI * k * (x - cells[i].lo)) * (Lc + half * part);
    }
    Lc = std::exp(kI * k * (cells[i].hi - cells[i].lo)) * (Lc + half * total);
  }
  cplx Rc = 0.0;
  for (std::size_t ii = nc; ii-- > 0;) {
    const double half = 0.5 * (cells[ii].hi - cells[ii].lo);
    const double mid = 0.5 * (cells[ii].hi + cells[ii].lo);
    std::array<cplx, kNodes> hl;
    cplx total = 0.0;
    for (int l = 0; l < kNodes; ++l) {
      const double y = mid + half * g.nodes[l];
      hl[l] = phi_v[ii * kNodes + l] * std::exp(kI * k * (y - cells[ii].hi));
      total += g.weights[l] * hl[l];
    }
    for (int j = 0; j < kNodes; ++j) {
      const double x = mid + half * g.nodes[j];
      cplx part = 0.0;
      for (int l = 0; l < kNodes; ++l) part += (g.weights[l] - S[j][l]) * hl[l];
      inner[ii * kNodes + j] += std::exp(kI * k * (cells[ii].hi - x)) * (Rc + half * part);
    }
    Rc = std::exp(kI * k * (cells[ii].hi - cells[ii].lo)) * (Rc + half * total);
  }
  cplx s = 0.0;
  for (std::size_t i = 0; i < nc; ++i) {
    const double half = 0.5 * (cells[i].hi - cells[i].lo);
    for (int j = 0; j < kNodes; ++j) s += g.weights[j] * half * psi_v[i * kNodes + j] * inner[i * kNodes + j];
  }
  return 0.5 * kI * s;
}

double max_distance(std::pair<double, double> s, double c) {
  return std::max(std::abs(s.first - c), std::abs(s.second - c));
}

}  // namespace

cplx sinc(cplx z) {
  if (std::abs(z) < 1e-3) {
    const cplx z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

SpectralAmplitude::SpectralAmplitude(TestFunction psi, TestFunction phi, BarrierParams params)
    : psi_(std::move(psi)), phi_(std::move(phi)), params_(params) {
  if (params_.is_dirichlet()) throw DomainError("SpectralAmplitude: alpha = inf has no continuous spectrum");
  psi1_pair_ = psi_.kind() == TestFunction::Kind::Eigenstate && phi_.kind() == TestFunction::Kind::Eigenstate &&
               psi_.n() == 1 && phi_.n() == 1;
}

AmplitudeQuartet SpectralAmplitude::quartet(cplx k) const { return amplitude_quartet(psi_, phi_, k, params_); }

AmplitudeQuartet SpectralAmplitude::quartet_derivative(cplx k) const {
  const double a = params_.a();
  return {edge_overlap_numeric(psi_, k, -a, true, params_), edge_overlap_numeric(psi_, k, a, true, params_),
          edge_overlap_numeric(phi_, k, -a, true, params_), edge_overlap_numeric(phi_, k, a, true, params_)};
}

cplx SpectralAmplitude::kG0(cplx k) const {
  if (psi1_pair_) return 4.0 * kI * params_.a() * h_closed_psi1(k, params_);
  return kG0_numeric(psi_, phi_, k, params_);
}

cplx SpectralAmplitude::Gr(cplx k) const { return Gr_amplitude(quartet(k), k, params_); }

cplx SpectralAmplitude::kgGr(cplx k) const {
  if (params_.is_free()) return 0.0;
  const double a = params_.a();
  const double alpha = params_.alpha();
  if (psi1_pair_) {
    const cplx ell = ell_closed_psi1(k, params_);
    const cplx d1 = (2.0 * k + kI * alpha) + kI * alpha * std::exp(2.0 * kI * k * a);
    if (std::abs(d1) < 1e-13 * (std::abs(2.0 * k + kI * alpha) + alpha * std::abs(std::exp(2.0 * kI * k * a))))
      throw PoleError("kgGr: k is a resonance pole");
    return alpha * ell * ell / d1;
  }
  if (k == cplx(0.0, 0.0)) {
    // k g(k) = -1/(2Q(k)) and Q, G_r both vanish at 0.
    const AmplitudeQuartet q = quartet(0.0);
    const AmplitudeQuartet dq = quartet_derivative(0.0);
    const cplx s11 = q.ell1 * q.m1 + q.ell2 * q.m2;
    const cplx s12 = q.ell1 * q.m2 + q.ell2 * q.m1;
    const cplx ds11 = dq.ell1 * q.m1 + q.ell1 * dq.m1 + dq.ell2 * q.m2 + q.ell2 * dq.m2;
    const cplx ds12 = dq.ell1 * q.m2 + q.ell1 * dq.m2 + dq.ell2 * q.m1 + q.ell2 * dq.m1;
    const cplx dGr = -2.0 * alpha * s11 - alpha * (kI * alpha) * ds11 + kI * alpha * alpha * (2.0 * kI * a) * s12 +
                     kI * alpha * alpha * ds12;
    const cplx dQ = 4.0 * kI * alpha * (1.0 + a * alpha);
    return -dGr / (2.0 * dQ);
  }
  return k * g_of_k(k, params_) * Gr(k);
}

cplx SpectralAmplitude::F(cplx k) const { return kG0(k) + kgGr(k); }

cplx SpectralAmplitude::residue(cplx k_pole) const {
  if (params_.is_free()) return 0.0;
  const double a = params_.a();
  const double alpha = params_.alpha();
  if (psi1_pair_) {
    const cplx ell = ell_closed_psi1(k_pole, params_);
    const cplx dd1 = 2.0 - 2.0 * alpha * a * std::exp(2.0 * kI * k_pole * a);
    return alpha * ell * ell / dd1;
  }
  return k_pole * Gr(k_pole) * g_residue(k_pole, params_);
}

std::vector<Family> SpectralAmplitude::pole_families() const {
  if (params_.is_free()) return {};
  const bool eig = psi_.kind() == TestFunction::Kind::Eigenstate && phi_.kind() == TestFunction::Kind::Eigenstate;
  if (eig && psi_.n() % 2 == 1 && phi_.n() % 2 == 1) return {Family::One};
  if (eig && psi_.n() % 2 == 0 && phi_.n() % 2 == 0) return {Family::Two};
  return {Family::One, Family::Two};
}

double SpectralAmplitude::growth_rate() const {
  const double a = params_.a();
  if (psi1_pair_) return 2.0 * a;
  const auto s1 = psi_.support(params_);
  const auto s2 = phi_.support(params_);
  const double d0 = std::max(s1.second - s2.first, s2.second - s1.first);
  if (params_.is_free()) return std::max(d0, 0.0);
  const double p1 = max_distance(s1, -a), p2 = max_distance(s1, a);
  const double q1 = max_distance(s2, -a), q2 = max_distance(s2, a);
  const double dr = std::max({p1 + q1, p2 + q2, p1 + q2 + 2.0 * a, p2 + q1 + 2.0 * a}) - 4.0 * a;
  return std::max({d0, dr, 0.0});
}

AmplitudeQuartet amplitude_quartet(const TestFunction& psi, const TestFunction& phi, cplx k,
                                   const BarrierParams& params) {
  const double a = params.a();
  auto pair = [&](const TestFunction& f) -> std::pair<cplx, cplx> {
    if (f.kind() == TestFunction::Kind::Eigenstate) {
      const cplx ph = std::exp(kI * k * a);
      return {ph * eigen_fourier(f.n(), k, params), ph * eigen_fourier(f.n(), -k, params)};
    }
    return {edge_overlap_numeric(f, k, -a, false, params), edge_overlap_numeric(f, k, a, false, params)};
  };
  const auto [l1, l2] = pair(psi);
  const auto [m1, m2] = pair(phi);
  return {l1, l2, m1, m2};
}

cplx ell_closed_psi1(cplx k, const BarrierParams& params) { return psi1_edge_overlap(k, params.a()); }

cplx h_closed_psi1(cplx k, const BarrierParams& params) {
  const double a = params.a();
  const cplx u = 2.0 * k * a;
  const double pi2 = kPi * kPi;
  if (std::abs(u - kPi) < 0.5) {
    const cplx v = u - kPi;
    const cplx d = u + kPi;
    return (kI * (u + 2.0 * kPi) / 2.0 + pi2 * phi2(kI * v)) / (d * d);
  }
  if (std::abs(u + kPi) < 0.5) {
    const cplx v = u + kPi;
    const cplx d = u - kPi;
    return (kI * (u - 2.0 * kPi) / 2.0 + pi2 * phi2(kI * v)) / (d * d);
  }
  const cplx d = u * u - pi2;
  return (kI * a * k * d + pi2 * (1.0 + std::exp(kI * u))) / (d * d);
}

cplx G0_amplitude(const TestFunction& psi, const TestFunction& phi, cplx k, const BarrierParams& params) {
  if (k == cplx(0.0, 0.0)) throw DomainError("G0_amplitude: k = 0 (use k G_0)");
  const bool psi1 = psi.kind() == TestFunction::Kind::Eigenstate && phi.kind() == TestFunction::Kind::Eigenstate &&
                    psi.n() == 1 && phi.n() == 1;
  if (psi1) return 4.0 * kI * params.a() * h_closed_psi1(k, params) / k;
  return kG0_numeric(psi, phi, k, params) / k;
}

cplx Gr_amplitude(const AmplitudeQuartet& q, cplx k, const BarrierParams& params) {
  const double alpha = params.alpha();
  const cplx e = std::exp(2.0 * kI * k * params.a());
  return -alpha * (2.0 * k + kI * alpha) * (q.ell1 * q.m1 + q.ell2 * q.m2) +
         kI * alpha * alpha * e * (q.ell1 * q.m2 + q.ell2 * q.m1);
}

cplx Gr_even_shortcut(cplx ell, cplx k, const BarrierParams& params) {
  const double alpha = params.alpha();
  const cplx e = std::exp(2.0 * kI * k * params.a());
  return 2.0 * ell * ell * (-alpha * (2.0 * k + kI * alpha) + kI * alpha * alpha * e);
}

cplx Gr_odd_shortcut(cplx ell, cplx k, const BarrierParams& params) {
  const double alpha = params.alpha();
  const cplx e = std::exp(2.0 * kI * k * params.a());
  return 2.0 * ell * ell * (-alpha * (2.0 * k + kI * alpha) - kI * alpha * alpha * e);
}

cplx F_alpha(const TestFunction& psi, const TestFunction& phi, cplx k, const BarrierParams& params) {
  return SpectralAmplitude(psi, phi, params).F(k);
}

}  // namespace dbarrier
