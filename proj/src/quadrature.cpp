#include "stabma/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace stabma::quad {
namespace {

boost::math::quadrature::tanh_sinh<double>& integrator() {
  thread_local boost::math::quadrature::tanh_sinh<double> ts(12);
  return ts;
}

constexpr double kTolerance = 1e-10;

}  // namespace

double tanh_sinh(const Integrand& f, double a, double b) {
  if (!(b > a)) return 0.0;
  auto guarded = [&f](double x) {
    const double v = f(x);
    return std::isfinite(v) ? v : 0.0;
  };
  double err = 0.0;
  return integrator().integrate(guarded, a, b, kTolerance, &err);
}

double gauss20(const Integrand& f, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

double integrate(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                 int pieces, double unit) {
  if (!(b > a)) return 0.0;
  pieces = std::max(pieces, 1);
  std::vector<double> cuts{a, b};
  for (double p : breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = std::asinh(cuts[s] / unit);
    const double hi = std::asinh(cuts[s + 1] / unit);
    double left = cuts[s];
    for (int i = 1; i <= pieces; ++i) {
      const double right =
          (i == pieces) ? cuts[s + 1] : unit * std::sinh(lo + (hi - lo) * i / pieces);
      total += tanh_sinh(f, left, right);
      left = right;
    }
  }
  return total;
}

}  // namespace stabma::quad
