#include "stabma/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "stabma/errors.hpp"
#include "stabma/quadrature.hpp"

namespace stabma {

void QuadConfig::validate() const {
  require(std::isfinite(z_cut) && z_cut > 0.0, "z_cut must be > 0");
  require(panels >= 64, "panels must be >= 64");
}

double lalpha_distance(const KernelDescriptor& kernel, double alpha, const LocalForm& form, double t,
                       double r, const QuadConfig& quad) {
  quad.validate();
  require(std::isfinite(r) && r > 0.0, "r must be > 0");
  require(alpha > 0.0 && alpha <= 2.0, "alpha must lie in (0, 2]");
  validate_local_form(form);
  if (t == 0.0) return 0.0;

  const double scale = std::pow(r, -kernel.gamma);
  auto integrand = [&](double z) {
    const double f = scale * (kernel.eval(r * (t + z)) - kernel.eval(r * z));
    return std::pow(std::fabs(f - tangent_kernel(form, alpha, t, z)), alpha);
  };

  const double Z = quad.z_cut * std::max(1.0, 1.0 / r);
  std::vector<double> cuts{0.0, -t};
  for (double b : kernel.breakpoints) {
    cuts.push_back(b / r);
    cuts.push_back(b / r - t);
  }
  double total = quad::integrate(integrand, -Z, Z, cuts, quad.panels, std::max(1.0, std::fabs(t)));

  if (quad.tail_handling == TailHandling::power_law) {
    const double e = (kernel.gamma - kernel.a) * alpha;
    if (!(e < -1.0))
      throw NonIntegrable("lalpha_distance: increment envelope is not integrable at infinity");
    for (double side : {-Z, Z}) {
      const double edge = integrand(side);
      if (std::isfinite(edge)) total += edge * Z / (-1.0 - e);
    }
  }
  return total;
}

double fractional_moment_constant(double p, double alpha) {
  require(p > 0.0 && p < alpha, "moment order must lie in (0, alpha)");
  using boost::math::tgamma;
  return std::pow(2.0, p) * tgamma((1.0 + p) / 2.0) * tgamma(1.0 - p / alpha) /
         (std::sqrt(std::numbers::pi) * tgamma(1.0 - p / 2.0));
}

ScaleEstimate estimate_scale(std::span<const double> samples, double alpha_assumed) {
  require(!samples.empty(), "estimate_scale needs samples");
  require(alpha_assumed > 0.0 && alpha_assumed <= 2.0, "alpha must lie in (0, 2]");
  ScaleEstimate est;
  est.moment_order = alpha_assumed / 4.0;
  const double p = est.moment_order;
  const double C = fractional_moment_constant(p, alpha_assumed);

  auto block_scale = [&](std::size_t lo, std::size_t hi) {
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) sum += std::pow(std::fabs(samples[i]), p);
    return std::pow(sum / static_cast<double>(hi - lo) / C, 1.0 / p);
  };

  est.value = block_scale(0, samples.size());
  const std::size_t blocks = std::min<std::size_t>(8, samples.size());
  if (blocks >= 2) {
    std::vector<double> b(blocks);
    for (std::size_t i = 0; i < blocks; ++i)
      b[i] = block_scale(i * samples.size() / blocks, (i + 1) * samples.size() / blocks);
    double mean = 0.0;
    for (double v : b) mean += v;
    mean /= static_cast<double>(blocks);
    double ss = 0.0;
    for (double v : b) ss += (v - mean) * (v - mean);
    est.std_error = std::sqrt(ss / static_cast<double>(blocks - 1) / static_cast<double>(blocks));
  }
  return est;
}

double estimate_scaling_exponent(const Path& path, double alpha_assumed,
                                 std::span<const std::int64_t> lags) {
  const auto n = static_cast<std::int64_t>(path.values.size());
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> inc;
  for (std::int64_t lag : lags) {
    require(lag >= 1, "lags must be >= 1");
    if (lag >= n) continue;
    inc.resize(static_cast<std::size_t>(n - lag));
    for (std::int64_t k = 0; k + lag < n; ++k)
      inc[static_cast<std::size_t>(k)] =
          path.values[static_cast<std::size_t>(k + lag)] - path.values[static_cast<std::size_t>(k)];
    const double s = estimate_scale(inc, alpha_assumed).value;
    if (!(s > 0.0) || !std::isfinite(s)) continue;
    xs.push_back(std::log(static_cast<double>(lag)));
    ys.push_back(std::log(s));
  }
  require(xs.size() >= 2, "estimate_scaling_exponent needs at least 2 usable lags");
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  require(sxx > 0.0, "estimate_scaling_exponent needs at least 2 distinct lags");
  return sxy / sxx;
}

double empirical_cf_distance(std::span<const double> samples, double alpha, double scale,
                             std::span<const double> xi_grid) {
  require(!samples.empty(), "empirical_cf_distance needs samples");
  require(!xi_grid.empty(), "xi grid must not be empty");
  require(alpha > 0.0 && alpha <= 2.0 && scale >= 0.0, "bad reference law");
  double worst = 0.0;
  for (double xi : xi_grid) {
    double re = 0.0;
    double im = 0.0;
    for (double x : samples) {
      re += std::cos(xi * x);
      im += std::sin(xi * x);
    }
    const double n = static_cast<double>(samples.size());
    const double target = std::exp(-std::pow(scale * std::fabs(xi), alpha));
    worst = std::max(worst, std::abs(std::complex<double>(re / n - target, im / n)));
  }
  return worst;
}

}  // namespace stabma
