#include "stabma/verify/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace stabma::verify {
namespace {

double cell(const std::function<double(double)>& f, double a, double b) {
  thread_local boost::math::quadrature::tanh_sinh<double> ts(10);
  auto guarded = [&f](double x) {
    const double v = f(x);
    return std::isfinite(v) ? v : 0.0;
  };
  return ts.integrate(guarded, a, b, 1e-9);
}

// int_X^inf |g(sign x)|^alpha dx. Panels of length <= pi up to a far point,
// then a power law fitted to the last octave.
double tail(const KernelDescriptor& k, double alpha, double X, double sign) {
  auto f = [&](double x) { return std::pow(std::fabs(k.eval(sign * x)), alpha); };
  const double reach = sign > 0 ? k.support_hi : -k.support_lo;
  const double far = std::min(reach, std::max(1e5, 100.0 * X));
  if (!(far > X)) return 0.0;
  double total = 0.0;
  double last_octave = 0.0;
  double x = X;
  while (x < far) {
    const double step = std::min({std::numbers::pi, std::max(x, 1.0) / 8.0, far - x});
    const double piece = (x == X) ? cell(f, x, x + step)
                                  : boost::math::quadrature::gauss<double, 20>::integrate(f, x, x + step);
    total += piece;
    if (x >= far / 2.0) last_octave += piece;
    x += step;
  }
  if (far < reach && std::isfinite(k.beta_decay)) {
    const double e = k.beta_decay * alpha;
    const double lo = std::max(X, far / 2.0);
    const double shape = (std::pow(lo, 1.0 - e) - std::pow(far, 1.0 - e)) / (e - 1.0);
    if (shape > 0.0) total += last_octave / shape * std::pow(far, 1.0 - e) / (e - 1.0);
  }
  return total;
}

double pos(double y, double p) { return y > 0.0 ? std::pow(y, p) : 0.0; }
double neg(double y, double p) { return y < 0.0 ? std::pow(-y, p) : 0.0; }

}  // namespace

double discretization_truth(const KernelDescriptor& kernel, double alpha, std::int64_t omega,
                            std::int64_t Omega) {
  const double w = static_cast<double>(omega);
  const std::int64_t n = omega * Omega;
  double total = 0.0;
  for (std::int64_t j = -n + 1; j <= 0; ++j) {
    const double a = static_cast<double>(j - 1) / w;
    const double b = static_cast<double>(j) / w;
    const double ref = kernel.eval(a);
    total += cell([&](double s) { return std::pow(std::fabs(ref - kernel.eval(s)), alpha); }, a, b);
  }
  for (std::int64_t j = 1; j <= n; ++j) {
    const double a = static_cast<double>(j - 1) / w;
    const double b = static_cast<double>(j) / w;
    const double ref = kernel.eval(b);
    total += cell([&](double s) { return std::pow(std::fabs(ref - kernel.eval(s)), alpha); }, a, b);
  }
  const double W = static_cast<double>(Omega);
  return total + tail(kernel, alpha, W, 1.0) + tail(kernel, alpha, W, -1.0);
}

double lfsm_reference(double H, double b_plus, double b_minus, double alpha, double t, double x) {
  const double p = H - 1.0 / alpha;
  return b_plus * (pos(t - x, p) - pos(-x, p)) + b_minus * (neg(t - x, p) - neg(-x, p));
}

double extime_bound_reference(double alpha, std::int64_t omega, std::int64_t Omega) {
  long double sum = 0.0L;
  const std::int64_t n = omega * Omega;
  for (std::int64_t j = n; j >= 1; --j) sum += std::pow(static_cast<long double>(j), -5.0L * alpha / 6.0L);
  const long double w = omega;
  const long double first = 2.0L / (1.0L + alpha) * sum / std::pow(w, 1.0L + alpha / 6.0L);
  const long double e = 5.0L * alpha / 6.0L - 1.0L;
  const long double second = 1.0L / e / std::pow(static_cast<long double>(Omega), e);
  return static_cast<double>(first + second);
}

double c_alpha_reference(double alpha) {
  const double inner = 2.0 / alpha * std::tgamma(1.0 - alpha) * std::cos(std::numbers::pi * alpha / 2.0);
  return std::pow(inner, -1.0 / alpha);
}

}  // namespace stabma::verify
