#include "dbarrier/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <string>

#include "dbarrier/errors.hpp"

namespace dbarrier {

namespace {

template <unsigned N>
QuadratureRule expand_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  QuadratureRule r;
  // Boost stores the non-negative half of the symmetric rule.
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      r.nodes.push_back(0.0);
      r.weights.push_back(w[i]);
      continue;
    }
    r.nodes.push_back(-x[i]);
    r.weights.push_back(w[i]);
    r.nodes.push_back(x[i]);
    r.weights.push_back(w[i]);
  }
  return r;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  static const QuadratureRule r8 = expand_rule<8>();
  static const QuadratureRule r12 = expand_rule<12>();
  static const QuadratureRule r20 = expand_rule<20>();
  static const QuadratureRule r30 = expand_rule<30>();
  switch (n) {
    case 8: return r8;
    case 12: return r12;
    case 20: return r20;
    case 30: return r30;
    default: throw DomainError("gauss_legendre: unsupported order " + std::to_string(n));
  }
}

namespace {
std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}
}  // namespace

cplx integrate_adaptive(const RealToComplex& f, double lo, double hi, double rel_tol, double abs_tol,
                        unsigned max_depth, double* error) {
  if (lo == hi) return 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  struct Panel {
    double a, b;
    cplx value;
    double err, l1;
    unsigned depth;
    bool operator<(const Panel& o) const { return err < o.err; }
  };
  // Boost 1.74 reports the Kronrod-Gauss difference of each leaf in [-1, 1] units, so its own
  // recursion over-refines narrow intervals. Only the single-panel rule is used here.
  auto panel = [&](double a, double b, unsigned depth) {
    Panel p{a, b, 0.0, 0.0, 0.0, depth};
    p.value = GK::integrate(f, a, b, 0, 0.0, &p.err, &p.l1);
    p.err *= 0.5 * std::abs(b - a);
    return p;
  };
  constexpr std::size_t kMaxPanels = 4000;
  std::priority_queue<Panel> heap;
  heap.push(panel(lo, hi, 0));
  double err = heap.top().err, l1 = heap.top().l1;
  while (err > std::max(rel_tol * l1, abs_tol) && heap.size() < kMaxPanels) {
    const Panel worst = heap.top();
    if (worst.depth >= max_depth) break;
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = panel(worst.a, mid, worst.depth + 1), right = panel(mid, worst.b, worst.depth + 1);
    err += left.err + right.err - worst.err;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
  }
  // Recompute the running sums to shed the cancellation in the updates above.
  cplx r = 0.0;
  err = l1 = 0.0;
  for (; !heap.empty(); heap.pop()) {
    r += heap.top().value;
    err += heap.top().err;
    l1 += heap.top().l1;
  }
  if (error) *error = err;
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
    throw QuadratureError("integrate_adaptive: non-finite integral on [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  // Accept a tenfold overshoot when the depth or panel budget runs out.
  if (err > 10.0 * std::max(rel_tol * l1, abs_tol))
    throw QuadratureError("integrate_adaptive: error estimate " + short_number(err) + " above tolerance on [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return r;
}

}  // namespace dbarrier
