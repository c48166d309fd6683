#pragma once

#include <string>
#include <vector>

#include "dbarrier/barrier_model.hpp"
#include "dbarrier/resonance_solver.hpp"
#include "dbarrier/spectral_amplitude.hpp"
#include "dbarrier/test_function.hpp"
#include "dbarrier/types.hpp"

namespace dbarrier {

enum class Method { Contour, Direct, Tdse, Asymptotic };

const char* method_name(Method m);
/// Parses "contour", "direct", "tdse" or "asymptotic"; DomainError otherwise.
Method parse_method(const std::string& name);

struct DecayCurve {
  BarrierParams params;
  TestFunction psi;
  TestFunction phi;
  std::vector<double> t;
  std::vector<cplx> values;
  std::vector<Method> method;
};

/// 1 if |Im sqrt E| < |Re sqrt E|, 1/2 on equality to 1e-12 relative, 0 otherwise.
double beta_weight(cplx E);

struct ContourOptions {
  double rel_tol = 1e-12;
  /// Residue terms are summed until three in a row fall below this.
  double residue_cutoff = 1e-18;
  int max_poles = 20000;
};

/// <psi, e^{-itH} phi> from the ray k = s e^{-i pi/4} plus beta-weighted residues:
///   (1/pi i) int_0^inf [F(s w) + F(-s w)] w e^{-s^2 t} ds - 2 sum beta_p Res F(k_p) e^{-i k_p^2 t}.
/// Poles within 0.25 of the ray (in s) are passed above by a local bump of the path, which
/// removes their residue for any beta; on the ray this equals principal value plus beta = 1/2.
/// PoleOnRayError if a pole is within 1e-10 of the ray but beta_weight does not classify it as
/// on the ray. QuadratureError below t = rho^2 / 200, where cancellation inside F on the ray
/// exceeds 1e-5 (use the direct method there).
cplx f_alpha_contour(const SpectralAmplitude& amp, double t, const ContourOptions& opts = {});
/// rho^2 / 200 with rho = amp.growth_rate(): the smallest t the contour accepts.
double contour_min_time(const SpectralAmplitude& amp);
cplx f_alpha_contour(const TestFunction& psi, const TestFunction& phi, const BarrierParams& params, double t);

/// Largest t the real-axis method accepts.
inline constexpr double kDirectMaxTime = 50.0;

struct DirectOptions {
  double k_max = 400.0;
  /// Real-axis integral with e^{-k^2 (it + eps)}, eps in {1e-2, 1e-3, 1e-4} t, extrapolated to 0.
  bool eps_ladder = false;
  double rel_tol = 1e-12;
};

/// (1/pi i) int_0^K [F(k) + F(-k)] e^{-ik^2 t} dk plus an integration-by-parts tail.
/// QuadratureError for t > 50.
cplx f_alpha_direct(const SpectralAmplitude& amp, double t, const DirectOptions& opts = {});
cplx f_alpha_direct(const TestFunction& psi, const TestFunction& phi, const BarrierParams& params, double t);
/// One rung of the eps ladder.
cplx f_alpha_direct_eps(const SpectralAmplitude& amp, double t, double eps, const DirectOptions& opts = {});

struct TdseOptions {
  double dx = 0.0;      // 0 picks a/100
  double dt = 0.002;
  double box = 0.0;     // half-width L; 0 picks a + max(6 sqrt(t_max), 3 pi t_max / a) + 1
  bool refinement_check = true;
  double check_tolerance = 2e-2;
};

/// Crank-Nicolson on [-L, L] with Dirichlet walls and the deltas as alpha/dx on the grid
/// nodes at +-a. Returns <psi, u(t)> with u(0) = phi.
DecayCurve tdse_oracle(const TestFunction& psi, const TestFunction& phi, const BarrierParams& params,
                       const std::vector<double>& t_grid, const TdseOptions& opts = {});

/// Result of a single Crank-Nicolson run, including the norm drift.
struct TdseRun {
  std::vector<cplx> overlap;
  std::vector<double> norm;
  double dx;
  double dt;
  double box;
};
TdseRun tdse_run(const TestFunction& psi, const TestFunction& phi, const BarrierParams& params,
                 const std::vector<double>& t_grid, double dx, double dt, double box);

/// (8a/pi^{5/2}) e^{-i pi/4} t^{-1/2} + C3 t^{-3/2}, C3 = 2^{3/2} a^3 (pi^2 - 8)(1 + i)/pi^{9/2}.
cplx watson_f0_asymptotic(const BarrierParams& params, double t);
cplx watson_f0_c3(const BarrierParams& params);

/// Taylor coefficients F_0 .. F_{2N-2} of F at k = 0 (even orders only are used).
/// Cauchy-circle evaluation, cross-checked at second order against a central difference with
/// step 1e-3 and one Richardson step; DerivativeError on disagreement.
std::vector<cplx> taylor_coefficients_at_zero(const SpectralAmplitude& amp, int n_even_terms);

/// Coefficients w_s of t^{-(s + 1/2)}, s = 0 .. N-1, of the Watson expansion of the ray integral.
std::vector<cplx> watson_coefficients(const SpectralAmplitude& amp, int N);
cplx watson_general(const SpectralAmplitude& amp, double t, int N);

struct ResonanceTerm {
  Family family;
  BranchIndex branch_m;
  cplx k;
  cplx energy;
  double beta;
  cplx c;  // -2 Res F(k): the term is beta c e^{-iEt}
};

struct ResidueSum {
  cplx value;
  std::vector<ResonanceTerm> terms;
};

/// Residue series for the first M resonances of each family that carries poles.
ResidueSum residue_sum(const SpectralAmplitude& amp, double t, int M);

/// c_m = -alpha l(k)^2 / (1 + alpha a (1 + 2k/(i alpha))) at k = k_{1,m}.
cplx c_m_closed_psi1(cplx k, const BarrierParams& params);

struct AsymptoticDecomposition {
  cplx c_alpha;          // closed form -2^{3/2}(1+i) a / (pi^{5/2} alpha^2)
  cplx c_alpha_watson;   // t^{-3/2} coefficient from the Taylor data of F
  cplx c_half;           // residual t^{-1/2} coefficient: free part plus resonance part
  cplx c_half_free;      // (8a/pi^{5/2}) e^{-i pi/4}
  std::vector<ResonanceTerm> resonance_terms;
  double remainder_order = 2.5;
  double t;
  double t_valid_min;    // 5 beat periods of the two slowest resonances
  bool valid;
  cplx value;            // c_alpha t^{-3/2} + sum beta c e^{-iEt}
};

AsymptoticDecomposition survival_asymptotic(const BarrierParams& params, double t, int M = 12);

/// -2^{3/2}(1+i) a / (pi^{5/2} alpha^2).
cplx c_alpha_closed(const BarrierParams& params);

struct CrossoverWindow {
  double t1;
  double t2;
  bool nonempty;
  bool degenerate;  // a alpha = 1: ln^2 vanishes and t2 is unbounded
  double z;
};

/// Window where d1/(alpha^2 t^{3/2}) < e^{-d2 t (ln(a alpha)/(a alpha))^2}, d1 = 4a/pi^{5/2},
/// d2 = pi/(2a^2). t1 uses W_0(z), t2 uses W_{-1}(z).
CrossoverWindow crossover_window(const BarrierParams& params);

/// a alpha at which the window opens: exp[-(3/5) W_0((5/3) / sqrt(K e))], K = 2^{4/3}/(3 pi^{2/3}).
double crossover_threshold();

/// Left and right sides of the crossover inequality.
double crossover_power_term(const BarrierParams& params, double t);
double crossover_exponential_term(const BarrierParams& params, double t);

struct CurveOptions {
  ContourOptions contour;
  DirectOptions direct;
  TdseOptions tdse;
  int asymptotic_terms = 12;
  /// 0 reads DBARRIER_THREADS, falling back to hardware concurrency.
  int threads = 0;
};

/// Contour points below contour_min_time fall back to the direct method; DecayCurve::method
/// records what was used at each t.
DecayCurve survival_curve(const TestFunction& psi, const TestFunction& phi, const BarrierParams& params,
                          const std::vector<double>& t_grid, Method method, const CurveOptions& opts = {});

/// Worker count from DBARRIER_THREADS (positive integer) or the hardware.
int configured_threads();

}  // namespace dbarrier
