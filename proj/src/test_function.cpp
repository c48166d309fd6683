#include "dbarrier/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dbarrier/errors.hpp"

namespace dbarrier {

TestFunction TestFunction::eigenstate(int n) {
  if (n < 1) throw DomainError("TestFunction::eigenstate: n must be >= 1");
  TestFunction f;
  f.kind_ = Kind::Eigenstate;
  f.n_ = n;
  return f;
}

TestFunction TestFunction::sampled(std::vector<double> x, std::vector<double> values, int order) {
  if (x.size() != values.size()) throw DomainError("TestFunction::sampled: size mismatch");
  if (order < 1 || order > 9) throw DomainError("TestFunction::sampled: order must be in [1, 9]");
  if (x.size() < static_cast<std::size_t>(order) + 1)
    throw DomainError("TestFunction::sampled: need at least order + 1 samples");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(values[i]))
      throw DomainError("TestFunction::sampled: non-finite sample");
    if (i > 0 && !(x[i] > x[i - 1])) throw DomainError("TestFunction::sampled: positions not strictly increasing");
  }
  TestFunction f;
  f.kind_ = Kind::Sampled;
  f.n_ = 0;
  f.order_ = order;
  f.x_ = std::move(x);
  f.v_ = std::move(values);
  return f;
}

TestFunction TestFunction::gaussian(double center, double sigma, double k0) {
  if (!(sigma > 0.0)) throw DomainError("TestFunction::gaussian: sigma must be > 0");
  const int half = 12 * 40;
  std::vector<double> x(2 * half + 1), v(2 * half + 1);
  const double h = sigma / 40.0;
  for (int i = -half; i <= half; ++i) {
    const double d = i * h;
    x[i + half] = center + d;
    v[i + half] = std::exp(-d * d / (2.0 * sigma * sigma)) * std::cos(k0 * d);
  }
  // Closed-form norm of the untruncated profile; the 12 sigma tail is below 1e-30.
  const double norm2 = std::sqrt(kPi) * sigma * 0.5 * (1.0 + std::exp(-k0 * k0 * sigma * sigma));
  const double s = 1.0 / std::sqrt(norm2);
  for (double& y : v) y *= s;
  return sampled(std::move(x), std::move(v), 7);
}

TestFunction TestFunction::load(const std::string& path, int order) {
  std::ifstream in(path);
  if (!in) throw DomainError("TestFunction::load: cannot open " + path);
  std::vector<double> x, v;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    double a, b;
    if (!(is >> a)) continue;
    std::string rest;
    if (!(is >> b) || (is >> rest))
      throw DomainError("TestFunction::load: " + path + ":" + std::to_string(lineno) + ": expected two columns");
    x.push_back(a);
    v.push_back(b);
  }
  return sampled(std::move(x), std::move(v), order);
}

double TestFunction::eval(double x, const BarrierParams& params) const {
  if (kind_ == Kind::Eigenstate) return eigenstate_eval(make_eigenstate(n_, params), params, x);
  if (x < x_.front() || x > x_.back()) return 0.0;
  const std::size_t n = x_.size();
  std::size_t i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
  i = i == 0 ? 0 : i - 1;
  if (i >= n - 1) i = n - 2;
  // Stencil of order_ + 1 points around the interval [x_i, x_{i+1}].
  const std::ptrdiff_t p = order_;
  std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(i) - (p - 1) / 2;
  lo = std::clamp<std::ptrdiff_t>(lo, 0, static_cast<std::ptrdiff_t>(n) - 1 - p);
  double s = 0.0;
  for (std::ptrdiff_t j = lo; j <= lo + p; ++j) {
    double w = 1.0;
    for (std::ptrdiff_t m = lo; m <= lo + p; ++m)
      if (m != j) w *= (x - x_[m]) / (x_[j] - x_[m]);
    s += w * v_[j];
  }
  return s;
}

std::pair<double, double> TestFunction::support(const BarrierParams& params) const {
  if (kind_ == Kind::Eigenstate) return {-params.a(), params.a()};
  return {x_.front(), x_.back()};
}

std::vector<double> TestFunction::breakpoints(const BarrierParams& params) const {
  if (kind_ == Kind::Eigenstate) return {-params.a(), params.a()};
  return x_;
}

double TestFunction::intrinsic_wavenumber(const BarrierParams& params) const {
  if (kind_ == Kind::Eigenstate) return make_eigenstate(n_, params).k_n;
  return 0.0;
}

bool TestFunction::is_even_about_origin(const BarrierParams& params) const {
  (void)params;
  return kind_ == Kind::Eigenstate && n_ % 2 == 1;
}

bool TestFunction::is_odd_about_origin(const BarrierParams& params) const {
  (void)params;
  return kind_ == Kind::Eigenstate && n_ % 2 == 0;
}

}  // namespace dbarrier
