#include "stabma/error_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "stabma/errors.hpp"
#include "stabma/quadrature.hpp"
#include "stabma/special.hpp"

namespace stabma {
namespace {

constexpr int kTailPanels = 48;

void check_grid(std::int64_t omega, std::int64_t Omega) {
  require(omega >= 1, "omega must be >= 1");
  require(Omega >= 1, "Omega must be >= 1");
  require(static_cast<double>(omega) * static_cast<double>(Omega) < 9e15, "omega * Omega too large");
}

void check_alpha(double alpha) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 2.0, "alpha must lie in (0, 2]");
}

double grid_sum(double s, std::int64_t omega, std::int64_t Omega) {
  return partial_zeta(s, omega * Omega);
}

// int_X^inf |x^g - (x-1)^g|^alpha dx for g != 0, X >= 1.
double lfsn_tail(double alpha, double gamma, double X) {
  const double cut = std::max(1e4, 100.0 * X);
  auto f = [alpha, gamma](double x) {
    return std::pow(std::fabs(std::pow(x, gamma) - std::pow(x - 1.0, gamma)), alpha);
  };
  double body = 0.0;
  // Integrable singularity at x = 1 when gamma < 0.
  const double split = std::min(cut, X + 1.0);
  body += quad::integrate(f, X, split, {}, 4);
  body += quad::integrate(f, split, cut, {}, kTailPanels, X + 1.0);
  // Mean value theorem: |x^g - (x-1)^g| <= |g| (x-1)^(g-1).
  const double e = (1.0 - gamma) * alpha - 1.0;
  return body + std::pow(std::fabs(gamma), alpha) * std::pow(cut - 1.0, -e) / e;
}

}  // namespace

BoundBreakdown make_breakdown(double alpha, double discretization, double truncation,
                              std::string formula) {
  BoundBreakdown b;
  b.alpha = alpha;
  b.discretization = discretization;
  b.truncation = truncation;
  b.total_alpha_power = discretization + truncation;
  b.err_scale = std::pow(b.total_alpha_power, 1.0 / alpha);
  b.formula = std::move(formula);
  return b;
}

BoundBreakdown generic_bound(const KernelDescriptor& kernel, double alpha, std::int64_t omega,
                             std::int64_t Omega) {
  check_alpha(alpha);
  check_grid(omega, Omega);
  if (!kernel.increment_metadata)
    throw InapplicableBound(kernel.label +
                            ": no increment metadata; use the kernel-specific bound");
  if (!(static_cast<double>(omega) > 1.0 / kernel.eta))
    throw InapplicableBound("generic bound needs omega > 1/eta");
  const double s = (kernel.a - kernel.gamma) * alpha;
  if (!(s > 1.0)) throw InapplicableBound("generic bound needs (a - gamma) alpha > 1");
  const double w = static_cast<double>(omega);
  const double disc = 2.0 * std::pow(kernel.c, alpha) /
                      ((1.0 + kernel.a * alpha) * std::pow(w, 1.0 + kernel.gamma * alpha)) *
                      grid_sum(s, omega, Omega);
  const double trunc = alpha_power_tail(kernel, alpha, static_cast<double>(Omega),
                                        std::max(1e4, 100.0 * static_cast<double>(Omega)),
                                        kTailPanels);
  return make_breakdown(alpha, disc, trunc, "generic");
}

BoundBreakdown rev_ou_bound(double lambda, double alpha, std::int64_t omega, std::int64_t Omega) {
  check_alpha(alpha);
  check_grid(omega, Omega);
  require(std::isfinite(lambda) && lambda > 0.0, "lambda must be > 0");
  const double w = static_cast<double>(omega);
  const double W = static_cast<double>(Omega);
  const double kappa = std::max(2.0 * lambda, w * std::expm1(lambda / w));
  const double disc = std::pow(kappa, alpha) / (1.0 + alpha) *
                      (-std::expm1(-alpha * lambda * W)) / std::expm1(alpha * lambda / w) *
                      std::pow(w, -1.0 - alpha);
  const double trunc = std::exp(-alpha * lambda * W) / (alpha * lambda);
  return make_breakdown(alpha, disc, trunc, "rev_ou_sharp");
}

BoundBreakdown lfsn_bound(double alpha, double H, std::int64_t omega, std::int64_t Omega) {
  check_alpha(alpha);
  check_grid(omega, Omega);
  require(std::isfinite(H) && H > 0.0 && H < 1.0, "H must lie in (0, 1)");
  const double gamma = H - 1.0 / alpha;
  // H = 1/alpha: the indicator of (0, 1] is reproduced exactly by the grid.
  if (gamma == 0.0) return make_breakdown(alpha, 0.0, 0.0, "lfsn");
  const double disc = std::pow(2.0, alpha + 1.0) * std::pow(std::fabs(gamma), alpha) /
                      (1.0 + alpha) * grid_sum(1.0 + alpha * (1.0 - H), omega, Omega) /
                      std::pow(static_cast<double>(omega), alpha * H);
  const double trunc = lfsn_tail(alpha, gamma, static_cast<double>(Omega));
  return make_breakdown(alpha, disc, trunc, "lfsn");
}

BoundBreakdown extime_bound(double alpha, std::int64_t omega, std::int64_t Omega) {
  check_alpha(alpha);
  check_grid(omega, Omega);
  require(alpha > 1.2, "extime bound needs alpha > 6/5");
  const double e = 5.0 * alpha / 6.0;
  const double disc = 2.0 / (1.0 + alpha) * grid_sum(e, omega, Omega) /
                      std::pow(static_cast<double>(omega), 1.0 + alpha / 6.0);
  const double trunc = std::pow(static_cast<double>(Omega), 1.0 - e) / (e - 1.0);
  return make_breakdown(alpha, disc, trunc, "extime");
}

BoundBreakdown exfrequency_bound(double alpha, std::int64_t omega, std::int64_t Omega) {
  check_alpha(alpha);
  check_grid(omega, Omega);
  require(alpha > 1.0 && alpha < 2.0, "exfrequency bound needs alpha in (1, 2)");
  const double disc = std::pow(2.0, alpha + 2.0) / (1.0 + alpha) * grid_sum(alpha, omega, Omega) /
                      std::pow(static_cast<double>(omega), 1.0 - alpha / 2.0);
  const double trunc = 8.0 / (alpha - 1.0) * std::pow(static_cast<double>(Omega), 1.0 - alpha);
  return make_breakdown(alpha, disc, trunc, "exfrequency");
}

BoundBreakdown exfrequency_bound_simplified(double alpha, std::int64_t omega, std::int64_t Omega) {
  check_alpha(alpha);
  check_grid(omega, Omega);
  require(alpha > 1.0 && alpha < 2.0, "exfrequency bound needs alpha in (1, 2)");
  const double disc = std::pow(2.0, alpha + 2.0) / (1.0 + alpha) * alpha / (alpha - 1.0) /
                      std::pow(static_cast<double>(omega), 1.0 - alpha / 2.0);
  const double trunc = 8.0 / (alpha - 1.0) * std::pow(static_cast<double>(Omega), 1.0 - alpha);
  return make_breakdown(alpha, disc, trunc, "exfrequency_simplified");
}

BoundBreakdown best_bound(const KernelDescriptor& kernel, double alpha, std::int64_t omega,
                          std::int64_t Omega) {
  switch (kernel.family) {
    case KernelFamily::reverse_ou:
      return rev_ou_bound(kernel.param("lambda"), alpha, omega, Omega);
    case KernelFamily::extime:
      return extime_bound(alpha, omega, Omega);
    case KernelFamily::exfrequency:
      if (kernel.gamma != -0.5)
        throw InapplicableBound("exfrequency bound is only available for gamma = -1/2");
      return exfrequency_bound(alpha, omega, Omega);
    case KernelFamily::lfsn:
      require(kernel.param("alpha") == alpha, "lfsn kernel was built for a different alpha");
      return lfsn_bound(alpha, kernel.param("H"), omega, Omega);
  }
  return generic_bound(kernel, alpha, omega, Omega);
}

TuningResult optimal_Omega(const KernelDescriptor& kernel, double alpha, std::int64_t omega) {
  check_alpha(alpha);
  require(omega >= 2, "optimal_Omega needs omega >= 2");
  const double w = static_cast<double>(omega);
  TuningResult r;

  if (kernel.family == KernelFamily::reverse_ou) {
    const double lambda = kernel.param("lambda");
    r.asymptotic_seed = std::log(w) / lambda;
    r.rule = "balance";
    auto balanced = [&](std::int64_t Omega) {
      const BoundBreakdown b = rev_ou_bound(lambda, alpha, omega, Omega);
      return b.truncation <= b.discretization;
    };
    const auto limit = static_cast<std::int64_t>(1e9);
    std::int64_t hi = std::max<std::int64_t>(1, static_cast<std::int64_t>(r.asymptotic_seed));
    while (!balanced(hi)) {
      if (hi >= limit)
        throw ValidationError("optimal_Omega: truncation never falls below discretization");
      hi = std::min(limit, hi * 2);
    }
    std::int64_t lo = 0;  // balanced(lo) is false or lo is below the range
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      (mid >= 1 && balanced(mid) ? hi : lo) = mid;
    }
    r.Omega = hi;
    r.breakdown = rev_ou_bound(lambda, alpha, omega, r.Omega);
    return r;
  }

  double exponent = 0.0;
  if (std::isfinite(kernel.beta_decay)) {
    const double denom = alpha * kernel.beta_decay - 1.0;
    if (!(denom > 0.0)) throw NonIntegrable(kernel.label + ": tail term does not vanish");
    exponent = (1.0 + alpha * kernel.gamma) / denom;
  }
  r.asymptotic_seed = std::pow(w, exponent);
  r.rule = "power_law";
  if (!(r.asymptotic_seed <= kMaxTunedOmega))
    throw ValidationError("optimal_Omega: tuned Omega exceeds " + std::to_string(kMaxTunedOmega));
  r.Omega = std::max<std::int64_t>(1, std::llround(r.asymptotic_seed));
  r.breakdown = best_bound(kernel, alpha, omega, r.Omega);
  return r;
}

}  // namespace stabma
