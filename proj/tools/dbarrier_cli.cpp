// dbarrier: tables and curves for the double-delta barrier.
//   resonances | decay | asymptotics | crossover | kernel-check
// Exit status: 0 success, 2 usage error, 1 numerical failure.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dbarrier/errors.hpp"
#include "dbarrier/fit.hpp"
#include "dbarrier/resolvent_kernel.hpp"
#include "dbarrier/resonance_solver.hpp"
#include "dbarrier/time_decay.hpp"
#include "table.hpp"

using namespace dbarrier;
using cli::Table;
using cli::Value;
using cli::format_number;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const char* const kUnits = "units: hbar = 2m = 1 (energies in 1/length^2, times in length^2)";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "csv";
  std::string output = "-";
};

double parse_real(const std::string& s, const std::string& what) {
  if (s == "inf") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || std::isnan(v)) throw UsageError(what + ": '" + s + "' is not a number");
  return v;
}

std::vector<double> parse_list(const std::vector<std::string>& items, const std::string& what) {
  std::vector<double> out;
  for (const auto& s : items) out.push_back(parse_real(s, what));
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
  return s;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

void require_length(double a) { require(std::isfinite(a) && a > 0.0, "--a must be a finite positive number"); }

std::vector<double> time_grid(double lo, double hi, int n, const std::string& spacing) {
  require(lo > 0.0 && std::isfinite(hi), "--t-min must be > 0 and --t-max finite");
  require(n >= 1, "--t-points must be >= 1");
  require(n == 1 ? hi >= lo : hi > lo, "--t-max must exceed --t-min");
  std::vector<double> t;
  for (int i = 0; i < n; ++i) {
    const double u = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    t.push_back(spacing == "log" ? lo * std::pow(hi / lo, u) : lo + (hi - lo) * u);
  }
  t.back() = n == 1 ? lo : hi;
  return t;
}

// "psiN", "gauss:center,sigma[,k0]" or a two-column file.
TestFunction parse_state(const std::string& spec) {
  if (spec.rfind("psi", 0) == 0 && spec.size() > 3 && spec.find_first_not_of("0123456789", 3) == std::string::npos) {
    const int n = std::stoi(spec.substr(3));
    require(n >= 1, "state index must be >= 1");
    return TestFunction::eigenstate(n);
  }
  if (spec.rfind("gauss:", 0) == 0) {
    std::vector<double> p;
    std::stringstream ss(spec.substr(6));
    std::string item;
    while (std::getline(ss, item, ',')) p.push_back(parse_real(item, "gauss"));
    require(p.size() == 2 || p.size() == 3, "gauss:center,sigma[,k0] expected");
    require(p[1] > 0.0, "gauss: sigma must be > 0");
    return TestFunction::gaussian(p[0], p[1], p.size() == 3 ? p[2] : 0.0);
  }
  std::ifstream probe(spec);
  require(static_cast<bool>(probe), "state '" + spec + "' is neither psiN, gauss:... nor a readable file");
  return TestFunction::load(spec);
}

bool is_psi1(const TestFunction& f) { return f.kind() == TestFunction::Kind::Eigenstate && f.n() == 1; }

// ---------------------------------------------------------------- resonances

struct ResonanceArgs {
  double a = 0.5;
  std::vector<std::string> alpha = {"1", "10", "100", "1000", "inf"};
  int n_max = 4;
};

Table cmd_resonances(const ResonanceArgs& args) {
  require_length(args.a);
  const std::vector<double> alphas = parse_list(args.alpha, "--alpha");
  for (double al : alphas) require(al > 0.0, "--alpha values must be > 0 (or inf)");
  require(args.n_max >= 1 && args.n_max <= 100000, "--n-max must be in [1, 100000]");

  Table t;
  t.command = "resonances";
  t.config = {{"a", format_number(args.a)}, {"alpha", join(alphas)}, {"n_max", std::to_string(args.n_max)}};
  t.notes = {kUnits, "E = k^2 on the unphysical sheet; large_alpha is the (a alpha)^-2 expansion",
             "rel_dev = |E - E_large_alpha| / |E|; alpha = inf rows are the Dirichlet eigenvalues (n pi / 2a)^2"};
  t.columns = {"alpha", "n",         "family",    "m",           "re_E",          "im_E",    "re_k",
               "im_k",  "residual",  "physical",  "beta",        "re_E_large_alpha", "im_E_large_alpha", "rel_dev"};
  for (double alpha : alphas) {
    const BarrierParams p(args.a, alpha);
    for (int n = 1; n <= args.n_max; ++n) {
      const long long family = n % 2 ? 1 : 2;
      const long long m = n % 2 ? -(n + 1) / 2 : -n / 2;
      if (std::isinf(alpha)) {
        const double k = n * kPi / (2.0 * args.a);
        const double E = eigen_energy_inf(n, p);
        t.rows.push_back({alpha, static_cast<long long>(n), family, m, E, 0.0, k, 0.0, 0.0, true, 1.0, E, 0.0, 0.0});
        continue;
      }
      const Resonance r = resonance_energy(n, p);
      const cplx large = resonance_large_alpha(n, p);
      t.rows.push_back({alpha, static_cast<long long>(n), family, m, r.energy.real(), r.energy.imag(), r.k.real(),
                        r.k.imag(), r.residual, r.physical, r.physical ? beta_weight(r.energy) : 0.0, large.real(),
                        large.imag(), std::abs(r.energy - large) / std::abs(r.energy)});
    }
  }
  return t;
}

// ---------------------------------------------------------------- decay

struct DecayArgs {
  double a = 0.5;
  std::vector<std::string> alpha = {"0", "0.1", "1", "10"};
  double t_min = 0.05;
  double t_max = 50.0;
  int t_points = 200;
  std::string grid = "log";
  std::vector<std::string> method = {"contour"};
  std::string psi = "psi1";
  std::string phi;
};

Table cmd_decay(const DecayArgs& args) {
  require_length(args.a);
  const std::vector<double> alphas = parse_list(args.alpha, "--alpha");
  for (double al : alphas) require(al >= 0.0 && std::isfinite(al), "decay: --alpha values must be finite and >= 0");
  const std::vector<double> grid = time_grid(args.t_min, args.t_max, args.t_points, args.grid);
  std::vector<Method> methods;
  for (const auto& m : args.method) {
    try {
      methods.push_back(parse_method(m));
    } catch (const DomainError&) {
      throw UsageError("--method: unknown method '" + m + "'");
    }
  }
  require(!methods.empty(), "--method: empty list");
  const TestFunction psi = parse_state(args.psi);
  const TestFunction phi = parse_state(args.phi.empty() ? args.psi : args.phi);
  for (Method m : methods) {
    if (m == Method::Direct)
      require(args.t_max <= kDirectMaxTime, "decay: the direct method is limited to t <= 50 (got --t-max " +
                                                format_number(args.t_max) + ")");
    if (m == Method::Asymptotic) require(is_psi1(psi) && is_psi1(phi), "decay: the asymptotic method needs psi1");
  }
  try {
    configured_threads();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  Table t;
  t.command = "decay";
  std::string mlist;
  for (std::size_t i = 0; i < methods.size(); ++i) mlist += (i ? "," : "") + std::string(method_name(methods[i]));
  t.config = {{"a", format_number(args.a)},
              {"alpha", join(alphas)},
              {"t_min", format_number(args.t_min)},
              {"t_max", format_number(args.t_max)},
              {"t_points", std::to_string(args.t_points)},
              {"grid", args.grid},
              {"method", mlist},
              {"psi", args.psi},
              {"phi", args.phi.empty() ? args.psi : args.phi}};
  t.notes = {kUnits, "f = <psi, exp(-itH) phi>; method_* is the method used at that t "
                     "(contour falls back to direct below its range)"};
  t.columns = {"alpha", "t"};
  const bool single = methods.size() == 1;
  for (Method m : methods) {
    const std::string sfx = single ? "" : std::string("_") + method_name(m);
    for (const char* c : {"re_f", "im_f", "abs_f", "method"}) t.columns.push_back(c + sfx);
  }
  if (methods.size() == 2) t.columns.push_back("abs_diff");

  for (double alpha : alphas) {
    const BarrierParams p(args.a, alpha);
    std::vector<DecayCurve> curves;
    for (Method m : methods) curves.push_back(survival_curve(psi, phi, p, grid, m));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::vector<Value> row = {alpha, grid[i]};
      for (const DecayCurve& c : curves) {
        const cplx f = c.values[i];
        row.insert(row.end(), {f.real(), f.imag(), std::abs(f), std::string(method_name(c.method[i]))});
      }
      if (curves.size() == 2) row.push_back(std::abs(curves[0].values[i] - curves[1].values[i]));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

// ---------------------------------------------------------------- asymptotics

struct AsymptoticsArgs {
  double a = 0.5;
  std::vector<std::string> alpha = {"10"};
  int M = 12;
  double t = 100.0;
  double fit_t_min = 20.0;
  double fit_t_max = 200.0;
  int fit_points = 60;
};

Table cmd_asymptotics(const AsymptoticsArgs& args) {
  require_length(args.a);
  const std::vector<double> alphas = parse_list(args.alpha, "--alpha");
  for (double al : alphas) require(al > 0.0 && std::isfinite(al), "asymptotics: --alpha values must be in (0, inf)");
  require(args.M >= 1 && args.M <= 10000, "--M must be in [1, 10000]");
  require(args.t > 0.0 && std::isfinite(args.t), "--t must be > 0");
  require(args.fit_t_min > 0.0 && args.fit_t_max > args.fit_t_min, "need 0 < --fit-t-min < --fit-t-max");
  require(args.fit_points >= 4, "--fit-points must be >= 4");

  Table t;
  t.command = "asymptotics";
  t.config = {{"a", format_number(args.a)},           {"alpha", join(alphas)},
              {"M", std::to_string(args.M)},           {"t", format_number(args.t)},
              {"fit_t_min", format_number(args.fit_t_min)}, {"fit_t_max", format_number(args.fit_t_max)},
              {"fit_points", std::to_string(args.fit_points)}};
  t.notes = {kUnits, "psi = phi = psi1; f ~ c_alpha t^-3/2 + sum_m beta_m c_m exp(-i E_m t) + O(t^-5/2)",
             "fit_* are least-squares coefficients of f - residue sum on the fit window",
             "remainder_slope: log-log slope of |f - residue sum - c_alpha t^-3/2| on the fit window"};
  t.columns = {"alpha", "quantity", "m", "re", "im", "abs", "beta"};
  const Value none;
  for (double alpha : alphas) {
    const BarrierParams p(args.a, alpha);
    const AsymptoticDecomposition d = survival_asymptotic(p, args.t, args.M);
    const AsymptoticFit fit = fit_asymptotics(p, args.fit_t_min, args.fit_t_max, args.fit_points, args.M);
    const SpectralAmplitude amp(TestFunction::eigenstate(1), TestFunction::eigenstate(1), p);
    const cplx f = f_alpha_contour(amp, args.t);
    auto add = [&](const char* q, cplx v) {
      t.rows.push_back({alpha, std::string(q), none, v.real(), v.imag(), std::abs(v), none});
    };
    add("c_alpha", d.c_alpha);
    add("c_alpha_watson", d.c_alpha_watson);
    add("c_half", d.c_half);
    add("c_half_free", d.c_half_free);
    add("fit_c_half", fit.c_half);
    add("fit_c_three_halves", fit.c_three_halves);
    add("fit_c_five_halves", fit.c_five_halves);
    t.rows.push_back({alpha, std::string("remainder_slope"), none, fit.remainder_slope, none, none, none});
    t.rows.push_back({alpha, std::string("t_valid_min"), none, d.t_valid_min, none, none, none});
    add("asymptotic_value_at_t", d.value);
    add("contour_value_at_t", f);
    for (const ResonanceTerm& term : d.resonance_terms) {
      const long long m = term.branch_m;
      t.rows.push_back({alpha, std::string("E"), m, term.energy.real(), term.energy.imag(), std::abs(term.energy),
                        term.beta});
      t.rows.push_back({alpha, std::string("c"), m, term.c.real(), term.c.imag(), std::abs(term.c), term.beta});
    }
  }
  return t;
}

// ---------------------------------------------------------------- crossover

struct CrossoverArgs {
  std::vector<std::string> a = {"0.5"};
  std::vector<std::string> alpha;
  double x_min = 0.1;
  double x_max = 100.0;
  int x_points = 61;
};

Table cmd_crossover(const CrossoverArgs& args) {
  const std::vector<double> as = parse_list(args.a, "--a");
  for (double a : as) require_length(a);
  std::vector<double> alphas;
  const bool sweep = args.alpha.empty();
  if (!sweep) {
    alphas = parse_list(args.alpha, "--alpha");
    for (double al : alphas) require(al > 0.0 && std::isfinite(al), "crossover: --alpha values must be in (0, inf)");
  } else {
    require(args.x_min > 0.0 && args.x_max > args.x_min && args.x_points >= 2,
            "need 0 < --x-min < --x-max and --x-points >= 2");
  }
  Table t;
  t.command = "crossover";
  t.config = {{"a", join(as)}};
  if (sweep) {
    t.config.push_back({"a_alpha_sweep", format_number(args.x_min) + ".." + format_number(args.x_max) + " log, " +
                                             std::to_string(args.x_points) + " points"});
  } else {
    t.config.push_back({"alpha", join(alphas)});
  }
  t.notes = {kUnits,
             "window: (4a/pi^5/2) / (alpha^2 t^3/2) < exp(-(pi/2a^2) t (ln(a alpha)/(a alpha))^2) for t1 < t < t2",
             "t1, t2 are nan when the window is empty; t2 = inf at a alpha = 1",
             "emptiness threshold a alpha = " + format_number(crossover_threshold())};
  t.columns = {"a", "alpha", "a_alpha", "z", "t1", "t2", "nonempty", "degenerate"};
  for (double a : as) {
    std::vector<double> list = alphas;
    if (sweep)
      for (int i = 0; i < args.x_points; ++i)
        list.push_back(args.x_min * std::pow(args.x_max / args.x_min, static_cast<double>(i) / (args.x_points - 1)) / a);
    for (double alpha : list) {
      const BarrierParams p(a, alpha);
      const CrossoverWindow w = crossover_window(p);
      t.rows.push_back({a, alpha, p.a_alpha(), w.z, w.t1, w.t2, w.nonempty, w.degenerate});
    }
  }
  return t;
}

// ---------------------------------------------------------------- kernel-check

struct KernelArgs {
  double a = 0.5;
  double alpha = 10.0;
  int n_max = 4;
};

Table cmd_kernel_check(const KernelArgs& args, bool& all_pass) {
  require_length(args.a);
  require(args.alpha > 0.0 && std::isfinite(args.alpha), "kernel-check: --alpha must be in (0, inf)");
  require(args.n_max >= 1 && args.n_max <= 1000, "--n-max must be in [1, 1000]");
  const BarrierParams p(args.a, args.alpha);
  const double a = args.a;
  Table t;
  t.command = "kernel-check";
  t.config = {{"a", format_number(a)}, {"alpha", format_number(args.alpha)}, {"n_max", std::to_string(args.n_max)}};
  t.notes = {kUnits, "value is the worst observed error of each identity; pass when value <= tolerance"};
  t.columns = {"check", "value", "tolerance", "pass"};
  all_pass = true;
  auto add = [&](const std::string& name, double value, double tol) {
    const bool ok = value <= tol;
    all_pass = all_pass && ok;
    t.rows.push_back({name, value, tol, ok});
  };

  for (int n = 1; n <= args.n_max; ++n) {
    const Resonance r = resonance_energy(n, p);
    add("resonance_residual_n" + std::to_string(n), r.residual / std::max(1.0, args.alpha), 1e-10);
    // Residue of g against the mean of (k - k_p) g(k) on a small circle.
    const double rad = 1e-4 * std::abs(r.k);
    cplx mean = 0.0;
    for (int j = 0; j < 64; ++j) {
      const cplx d = std::polar(rad, 2.0 * kPi * (j + 0.5) / 64.0);
      mean += d * g_of_k(r.k + d, p);
    }
    mean /= 64.0;
    const cplx res = g_residue(r.k, p);
    add("g_residue_n" + std::to_string(n), std::abs(mean - res) / std::abs(res), 1e-8);
  }

  const cplx k(1.7, 0.4);
  const std::vector<double> xs = {-2.0 * a, -a, -0.4 * a, 0.0, 0.3 * a, a, 1.8 * a};
  double sym = 0.0;
  for (double x : xs)
    for (double y : xs) sym = std::max(sym, std::abs(kernel_eval({x, y, k}, p) - kernel_eval({y, x, k}, p)));
  add("kernel_symmetry", sym, 1e-13);

  // Delta condition dK/dx(a+) - dK/dx(a-) = alpha K(a) and continuity, one-sided second-order differences.
  const double h = 1e-5;
  double jump = 0.0;
  for (double y : {-0.7 * a, 0.2 * a, 1.5 * a})
    for (double c : {-a, a}) {
      auto K = [&](double x) { return kernel_eval({x, y, k}, p); };
      const cplx right = (-3.0 * K(c) + 4.0 * K(c + h) - K(c + 2 * h)) / (2 * h);
      const cplx left = (3.0 * K(c) - 4.0 * K(c - h) + K(c - 2 * h)) / (2 * h);
      jump = std::max(jump, std::abs(right - left - args.alpha * K(c)) / std::max(1.0, std::abs(args.alpha * K(c))));
    }
  add("kernel_delta_jump", jump, 1e-6);

  // (-d^2/dx^2 - k^2) K = 0 away from x = y and the deltas.
  const double h2 = 1e-3;
  double helm = 0.0;
  for (double x : {-1.6 * a, -0.5 * a, 0.6 * a, 1.7 * a}) {
    const double y = 0.1 * a;
    auto K = [&](double u) { return kernel_eval({u, y, k}, p); };
    const cplx lap = (K(x + h2) - 2.0 * K(x) + K(x - h2)) / (h2 * h2);
    helm = std::max(helm, std::abs(-lap - k * k * K(x)) / std::max(1.0, std::abs(k * k * K(x))));
  }
  add("kernel_helmholtz", helm, 1e-5);

  // Closed-form psi1 amplitude against the generic quadrature path on sampled psi1.
  const EigenstateInf s1 = make_eigenstate(1, p);
  std::vector<double> sx, sv;
  for (int i = 0; i <= 400; ++i) {
    sx.push_back(-a + 2.0 * a * i / 400.0);
    sv.push_back(eigenstate_eval(s1, p, sx.back()));
  }
  const TestFunction sampled = TestFunction::sampled(sx, sv, 7);
  const SpectralAmplitude closed(TestFunction::eigenstate(1), TestFunction::eigenstate(1), p);
  const SpectralAmplitude quad(sampled, sampled, p);
  double amp_err = 0.0;
  for (const cplx q : {cplx(0.5, 0.0), cplx(2.0, -0.5), cplx(kPi / (2.0 * a), 0.0), cplx(7.0, 0.3)})
    amp_err = std::max(amp_err, std::abs(quad.F(q) - closed.F(q)) / std::max(1e-300, std::abs(closed.F(q))));
  add("amplitude_closed_vs_quadrature", amp_err, 1e-9);
  add("amplitude_at_zero", std::abs(closed.F(0.0)), 1e-13);
  return t;
}

// ---------------------------------------------------------------- main

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_option("-o,--output", c.output, "Output file ('-' for stdout)")->capture_default_str();
}

void emit(const Table& t, const Common& c) {
  auto write = [&](std::ostream& out) {
    if (c.format == "json")
      cli::write_json(t, out);
    else
      cli::write_csv(t, out);
  };
  if (c.output == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw UsageError("cannot open output file " + c.output);
  write(out);
  if (!out) throw std::runtime_error("write to " + c.output + " failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonances and time decay for the double delta barrier -d^2/dx^2 + alpha[delta(x+a) + delta(x-a)].\n"
               "Worker threads: DBARRIER_THREADS (default: hardware concurrency).",
               "dbarrier"};
  app.require_subcommand(1);
  Common common;

  ResonanceArgs res;
  auto* s_res = app.add_subcommand("resonances", "Resonance energies E_{alpha,n} and the large-alpha expansion");
  s_res->add_option("--a", res.a, "Half-distance between the barriers")->capture_default_str();
  s_res->add_option("--alpha", res.alpha, "Barrier strengths, comma separated; 'inf' for the Dirichlet box")
      ->delimiter(',')
      ->capture_default_str();
  s_res->add_option("--n-max", res.n_max, "Resonances per alpha")->capture_default_str();
  add_common(s_res, common);

  DecayArgs dec;
  auto* s_dec = app.add_subcommand("decay", "Survival amplitude f(t) = <psi, exp(-itH) phi>");
  s_dec->add_option("--a", dec.a, "Half-distance between the barriers")->capture_default_str();
  s_dec->add_option("--alpha", dec.alpha, "Barrier strengths, comma separated (0 = free)")
      ->delimiter(',')
      ->capture_default_str();
  s_dec->add_option("--t-min", dec.t_min, "First time")->capture_default_str();
  s_dec->add_option("--t-max", dec.t_max, "Last time")->capture_default_str();
  s_dec->add_option("--t-points", dec.t_points, "Number of times")->capture_default_str();
  s_dec->add_option("--grid", dec.grid, "Time spacing")->check(CLI::IsMember({"log", "linear"}))->capture_default_str();
  s_dec->add_option("--method", dec.method, "contour, direct, tdse or asymptotic; two give an abs_diff column")
      ->delimiter(',')
      ->capture_default_str();
  s_dec->add_option("--psi", dec.psi, "Bra state: psiN, gauss:center,sigma[,k0] or a two-column file")
      ->capture_default_str();
  s_dec->add_option("--phi", dec.phi, "Ket state (default: same as --psi)");
  add_common(s_dec, common);

  AsymptoticsArgs asy;
  auto* s_asy = app.add_subcommand("asymptotics", "Large-time decomposition for psi = phi = psi1");
  s_asy->add_option("--a", asy.a, "Half-distance between the barriers")->capture_default_str();
  s_asy->add_option("--alpha", asy.alpha, "Barrier strengths, comma separated")->delimiter(',')->capture_default_str();
  s_asy->add_option("--M", asy.M, "Resonances in the residue sum")->capture_default_str();
  s_asy->add_option("--t", asy.t, "Time at which the decomposition is evaluated")->capture_default_str();
  s_asy->add_option("--fit-t-min", asy.fit_t_min, "Start of the fit window")->capture_default_str();
  s_asy->add_option("--fit-t-max", asy.fit_t_max, "End of the fit window")->capture_default_str();
  s_asy->add_option("--fit-points", asy.fit_points, "Log-spaced points in the fit window")->capture_default_str();
  add_common(s_asy, common);

  CrossoverArgs cro;
  auto* s_cro = app.add_subcommand("crossover", "Window where the resonance term dominates the t^-3/2 tail");
  s_cro->add_option("--a", cro.a, "Half-distances, comma separated")->delimiter(',')->capture_default_str();
  s_cro->add_option("--alpha", cro.alpha, "Barrier strengths, comma separated (default: sweep a*alpha)")
      ->delimiter(',');
  s_cro->add_option("--x-min", cro.x_min, "Sweep start in a*alpha")->capture_default_str();
  s_cro->add_option("--x-max", cro.x_max, "Sweep end in a*alpha")->capture_default_str();
  s_cro->add_option("--x-points", cro.x_points, "Log-spaced sweep points")->capture_default_str();
  add_common(s_cro, common);

  KernelArgs ker;
  auto* s_ker = app.add_subcommand("kernel-check", "Consistency checks of the resolvent kernel and amplitudes");
  s_ker->add_option("--a", ker.a, "Half-distance between the barriers")->capture_default_str();
  s_ker->add_option("--alpha", ker.alpha, "Barrier strength")->capture_default_str();
  s_ker->add_option("--n-max", ker.n_max, "Resonances checked")->capture_default_str();
  add_common(s_ker, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (s_res->parsed()) {
      emit(cmd_resonances(res), common);
    } else if (s_dec->parsed()) {
      emit(cmd_decay(dec), common);
    } else if (s_asy->parsed()) {
      emit(cmd_asymptotics(asy), common);
    } else if (s_cro->parsed()) {
      emit(cmd_crossover(cro), common);
    } else if (s_ker->parsed()) {
      bool ok = true;
      emit(cmd_kernel_check(ker, ok), common);
      if (!ok) {
        std::cerr << "dbarrier: kernel-check: one or more identities failed\n";
        return 1;
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "dbarrier: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "dbarrier: numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "dbarrier: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
