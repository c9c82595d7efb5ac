#include "stabma/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "stabma/errors.hpp"
#include "stabma/quadrature.hpp"
#include "stabma/special.hpp"

namespace stabma {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

double negative_power(double x, double p) { return positive_power(-x, p); }

// Checks 0 < gamma + 1/alpha < a <= 1 and beta * alpha > 1 at the ends and
// middle of the validity interval.
void check_metadata(const KernelDescriptor& k) {
  require(k.c > 0.0 || !k.increment_metadata, k.label + ": c must be > 0");
  require(k.eta > 0.0, k.label + ": eta must be > 0");
  const AlphaInterval& v = k.alpha_validity;
  const double nudge = 1e-9;
  const double lo = v.lo_closed ? v.lo : v.lo + nudge;
  const double hi = v.hi_closed ? v.hi : v.hi - nudge;
  for (double alpha : {lo, 0.5 * (lo + hi), hi}) {
    if (k.increment_metadata) {
      const double h = k.gamma + 1.0 / alpha;
      require(h > 0.0 && h < k.a && k.a <= 1.0,
              k.label + ": localisability metadata fails at alpha " + std::to_string(alpha));
    }
    if (std::isfinite(k.beta_decay))
      require(k.beta_decay * alpha > 1.0, k.label + ": |g|^alpha not integrable at alpha " +
                                              std::to_string(alpha));
  }
}

double exfrequency_eval(double gamma, double x) {
  const double y = std::fabs(x);
  if (y == 0.0) return kInf;
  return 2.0 * (gamma + 1.0) * std::pow(y, gamma) * oscillatory_tail(gamma + 2.0, y) -
         2.0 * std::sin(y) / y;
}

// One side of the tail integral: int_x^inf |g(sign * v)|^alpha dv for x >= 0.
double one_sided_tail(const KernelDescriptor& k, double alpha, double x, double cut, int panels,
                      double sign) {
  const KernelDescriptor::TailIntegral& closed = sign > 0 ? k.right_tail : k.left_tail;
  if (closed) return closed(alpha, x);
  const double reach = sign > 0 ? k.support_hi : -k.support_lo;
  if (reach <= x) return 0.0;
  const double far = std::max({cut, x, k.tail_start});
  double total = 0.0;
  if (far > x) {
    auto f = [&](double v) { return std::pow(std::fabs(k.eval(sign * v)), alpha); };
    std::vector<double> cuts;
    for (double b : k.breakpoints) cuts.push_back(sign * b);
    total += quad::integrate(f, x, std::min(far, reach), cuts, panels);
  }
  if (reach > far) {
    if (!std::isfinite(k.beta_decay)) return total;
    const double e = k.beta_decay * alpha;
    if (!(e > 1.0))
      throw NonIntegrable(k.label + ": tail of |g|^alpha diverges (beta * alpha <= 1)");
    total += std::pow(k.tail_constant, alpha) * std::pow(far, 1.0 - e) / (e - 1.0);
  }
  return total;
}

}  // namespace

bool AlphaInterval::contains(double alpha) const {
  const bool above = lo_closed ? alpha >= lo : alpha > lo;
  const bool below = hi_closed ? alpha <= hi : alpha < hi;
  return above && below;
}

std::string AlphaInterval::describe() const {
  std::ostringstream os;
  os << (lo_closed ? '[' : '(') << lo << ", " << hi << (hi_closed ? ']' : ')');
  return os.str();
}

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::reverse_ou: return "rev_ou";
    case KernelFamily::extime: return "extime";
    case KernelFamily::exfrequency: return "exfrequency";
    case KernelFamily::lfsn: return "lfsn";
  }
  return "unknown";
}

double KernelDescriptor::param(const std::string& name) const {
  const auto it = params.find(name);
  require(it != params.end(), label + ": no parameter '" + name + "'");
  return it->second;
}

void validate_local_form(const LocalForm& form) {
  if (const auto* f = std::get_if<LfsmForm>(&form)) {
    require(f->H > 0.0 && f->H < 1.0, "lfsm local form needs 0 < H < 1");
    require(f->b_plus != 0.0 || f->b_minus != 0.0, "lfsm local form needs (b+, b-) != (0, 0)");
  }
}

std::string describe(const LocalForm& form) {
  std::ostringstream os;
  os.precision(10);
  if (const auto* f = std::get_if<LfsmForm>(&form))
    os << "lfsm(H=" << f->H << ", b+=" << f->b_plus << ", b-=" << f->b_minus << ")";
  else if (const auto* l = std::get_if<LevyForm>(&form))
    os << "levy(factor=" << l->factor << ")";
  else if (const auto* m = std::get_if<LogMixForm>(&form))
    os << "logmix(l1=" << m->l1 << ", l2=" << m->l2 << ")";
  return os.str();
}

double oscillatory_tail(double s, double y) {
  require(s > 1.0 && s < 2.0, "oscillatory_tail: s must lie in (1, 2)");
  require(y >= 0.0, "oscillatory_tail: y must be >= 0");
  constexpr double kSeriesEnd = 2.0;
  constexpr double kAsymptoticStart = 20.0;

  if (y <= kSeriesEnd) {
    const double mu = 1.0 - s;
    double value = boost::math::tgamma(mu) * std::sin(kPi * mu / 2.0);
    if (y == 0.0) return value;
    // int_0^y v^-s sin v dv, termwise from the sine series.
    double factorial = 1.0;  // (2k+1)!
    double power = std::pow(y, 2.0 - s);
    const double y2 = y * y;
    for (int k = 0; k < 40; ++k) {
      if (k > 0) factorial *= (2.0 * k) * (2.0 * k + 1.0);
      const double term = power / (factorial * (2.0 * k + 2.0 - s));
      value += (k % 2 == 0) ? -term : term;
      if (term < 1e-18 * std::fabs(value)) break;
      power *= y2;
    }
    return value;
  }

  if (y >= kAsymptoticStart) {
    // int_y^inf v^-s e^{iv} dv = i e^{iy} sum_k (-i)^k (s)_k y^{-s-k}, cut at the smallest term.
    std::complex<double> sum = 0.0;
    std::complex<double> phase = 1.0;
    const std::complex<double> minus_i(0.0, -1.0);
    double magnitude = std::pow(y, -s);
    double previous = kInf;
    for (int k = 0; k < 60; ++k) {
      if (magnitude >= previous) break;
      sum += phase * magnitude;
      if (magnitude < 1e-18 * std::abs(sum)) break;
      previous = magnitude;
      magnitude *= (s + k) / y;
      phase *= minus_i;
    }
    const std::complex<double> j = std::complex<double>(0.0, 1.0) * std::polar(1.0, y) * sum;
    return j.imag();
  }

  auto f = [s](double v) { return std::pow(v, -s) * std::sin(v); };
  const int panels = static_cast<int>(std::ceil(kAsymptoticStart - y));
  const double width = (kAsymptoticStart - y) / panels;
  double value = oscillatory_tail(s, kAsymptoticStart);
  for (int i = 0; i < panels; ++i)
    value += boost::math::quadrature::gauss<double, 20>::integrate(f, y + i * width,
                                                                  y + (i + 1) * width);
  return value;
}

KernelDescriptor reverse_ou_kernel(double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, "rev_ou: lambda must be > 0");
  KernelDescriptor k;
  k.label = "rev_ou";
  k.family = KernelFamily::reverse_ou;
  k.params = {{"lambda", lambda}};
  k.eval = [lambda](double x) { return x <= 0.0 ? std::exp(lambda * x) : 0.0; };
  k.gamma = 0.0;
  k.a = 1.0;
  k.c = 2.0 * std::max(1.0, lambda);
  k.eta = 1.0;
  k.c0_plus = 0.0;
  k.c0_minus = 1.0;
  k.support_hi = 0.0;
  k.breakpoints = {0.0};
  k.alpha_validity = {1.0, 2.0, false, true};
  k.right_tail = [](double, double) { return 0.0; };
  k.left_tail = [lambda](double alpha, double x) {
    x = std::max(x, 0.0);
    return std::exp(-alpha * lambda * x) / (alpha * lambda);
  };
  k.local_form = [](double) -> LocalForm { return LevyForm{1.0}; };
  check_metadata(k);
  return k;
}

KernelDescriptor extime_kernel() {
  KernelDescriptor k;
  k.label = "extime";
  k.family = KernelFamily::extime;
  k.eval = [](double x) {
    if (x <= 0.0) return 0.0;
    return x <= 1.0 ? std::pow(x, 1.0 / 6.0) : std::pow(x, -5.0 / 6.0);
  };
  k.gamma = 1.0 / 6.0;
  k.a = 1.0;
  k.c = 1.0;
  k.eta = 1.0;
  k.c0_plus = 1.0;
  k.c0_minus = 0.0;
  k.beta_decay = 5.0 / 6.0;
  k.tail_constant = 1.0;
  k.tail_start = 1.0;
  k.support_lo = 0.0;
  k.breakpoints = {0.0, 1.0};
  k.alpha_validity = {1.2, 2.0, false, true};
  k.left_tail = [](double, double) { return 0.0; };
  k.right_tail = [](double alpha, double x) {
    x = std::max(x, 0.0);
    const double e = 5.0 * alpha / 6.0 - 1.0;
    if (!(e > 0.0)) throw NonIntegrable("extime: tail diverges for alpha <= 6/5");
    double total = 0.0;
    if (x < 1.0) {
      const double p = 1.0 + alpha / 6.0;
      total += (1.0 - std::pow(x, p)) / p;
      x = 1.0;
    }
    return total + std::pow(x, -e) / e;
  };
  k.local_form = [](double alpha) -> LocalForm { return LfsmForm{1.0 / 6.0 + 1.0 / alpha, 1.0, 0.0}; };
  check_metadata(k);
  return k;
}

KernelDescriptor exfrequency_kernel(double gamma) {
  require(std::isfinite(gamma) && gamma > -1.0 && gamma < 0.0,
          "exfrequency: gamma must lie in (-1, 0)");
  KernelDescriptor k;
  k.label = "exfrequency";
  k.family = KernelFamily::exfrequency;
  k.params = {{"gamma", gamma}};
  k.eval = [gamma](double x) { return exfrequency_eval(gamma, x); };
  k.gamma = gamma;
  // Near the origin g(x) ~ b |x|^gamma on both sides.
  const double b = 2.0 * (gamma + 1.0) * oscillatory_tail(gamma + 2.0, 0.0);
  k.c0_plus = b;
  k.c0_minus = b;
  k.increment_metadata = false;
  k.beta_decay = 1.0;
  k.tail_constant = 4.0;
  k.tail_start = 1.0;
  k.breakpoints = {0.0};
  k.alpha_validity = {std::max(1.0, 1.0 / (0.5 - gamma)), std::min(2.0, -1.0 / gamma), false, false};
  require(k.alpha_validity.lo < k.alpha_validity.hi,
          "exfrequency: no admissible alpha for this gamma");
  k.local_form = [gamma](double alpha) -> LocalForm {
    // The transform here is normalised with 1/(2 pi) in front, so the
    // coefficients for l = 1 pick up a factor 2 pi.
    const auto [bp, bm] = fourier_coefficients_b(1.0, 0.0, gamma);
    return LfsmForm{gamma + 1.0 / alpha, 2.0 * kPi * bp, 2.0 * kPi * bm};
  };
  check_metadata(k);
  return k;
}

KernelDescriptor lfsn_kernel(double alpha, double H) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 2.0, "lfsn: alpha must lie in (0, 2]");
  require(std::isfinite(H) && H > 0.0 && H < 1.0, "lfsn: H must lie in (0, 1)");
  const double gamma = H - 1.0 / alpha;
  KernelDescriptor k;
  k.label = "lfsn";
  k.family = KernelFamily::lfsn;
  k.params = {{"alpha", alpha}, {"H", H}};
  k.eval = [gamma](double x) { return positive_power(x, gamma) - positive_power(x - 1.0, gamma); };
  k.gamma = gamma;
  k.a = 1.0;
  k.c = 2.0 * std::fabs(gamma);
  k.eta = 1.0;
  k.c0_plus = 1.0;
  k.c0_minus = 0.0;
  k.support_lo = 0.0;
  k.breakpoints = {0.0, 1.0};
  k.alpha_validity = {alpha, alpha, true, true};
  if (gamma == 0.0) {
    // H = 1/alpha: g is the indicator of (0, 1].
    k.support_hi = 1.0;
    k.increment_metadata = false;
  } else {
    // |x^g - (x-1)^g| <= |g| (x-1)^(g-1) <= |g| 2^(1-g) x^(g-1) for x >= 2.
    k.beta_decay = 1.0 - gamma;
    k.tail_constant = std::fabs(gamma) * std::pow(2.0, 1.0 - gamma);
    k.tail_start = 2.0;
  }
  k.left_tail = [](double, double) { return 0.0; };
  k.local_form = [H](double) -> LocalForm { return LfsmForm{H, 1.0, 0.0}; };
  check_metadata(k);
  return k;
}

KernelDescriptor make_kernel(const std::string& label, const std::map<std::string, double>& params,
                             double alpha) {
  auto get = [&params](const std::string& name, double fallback) {
    const auto it = params.find(name);
    return it == params.end() ? fallback : it->second;
  };
  if (label == "rev_ou") return reverse_ou_kernel(get("lambda", 1.0));
  if (label == "extime") return extime_kernel();
  if (label == "exfrequency") return exfrequency_kernel(get("gamma", -0.5));
  if (label == "lfsn") return lfsn_kernel(alpha, get("H", 0.7));
  throw ValidationError("unknown kernel '" + label + "' (expected rev_ou, extime, exfrequency, lfsn)");
}

std::pair<double, double> fourier_coefficients_b(double l1, double l2, double gamma) {
  require(gamma > -1.0 && gamma < 1.0, "fourier_coefficients_b: gamma must lie in (-1, 1)");
  if (gamma == 0.0)
    throw ValidationError("fourier_coefficients_b: gamma = 0 gives a log-fractional local form");
  const double angle = kPi * (gamma + 1.0) / 2.0;
  const double pre = 1.0 / (2.0 * boost::math::tgamma(gamma + 1.0));
  const double even = l1 / std::cos(angle);
  const double odd = l2 / std::sin(angle);
  return {pre * (even - odd), pre * (even + odd)};
}

double tangent_kernel(const LocalForm& form, double alpha, double t, double z) {
  if (t == 0.0) return 0.0;
  if (const auto* f = std::get_if<LfsmForm>(&form)) {
    const double p = f->H - 1.0 / alpha;
    const double x = -z;
    return f->b_plus * (positive_power(t - x, p) - positive_power(-x, p)) +
           f->b_minus * (negative_power(t - x, p) - negative_power(-x, p));
  }
  if (const auto* l = std::get_if<LevyForm>(&form)) {
    if (t > 0.0) return (z > -t && z <= 0.0) ? -l->factor : 0.0;
    return (z > 0.0 && z <= -t) ? l->factor : 0.0;
  }
  const auto& m = std::get<LogMixForm>(form);
  const double x = -z;
  if (x == 0.0 || x == t) return 0.0;
  const double log_part = std::log(std::fabs(t - x)) - std::log(std::fabs(x));
  const double levy_part = t > 0.0 ? (x >= 0.0 && x <= t ? 1.0 : 0.0)
                                   : (x >= t && x <= 0.0 ? -1.0 : 0.0);
  return -m.l1 / kPi * log_part - m.l2 * levy_part;
}

void AlphaNormQuadrature::validate() const {
  require(std::isfinite(domain_cut) && domain_cut > 0.0, "domain_cut must be > 0");
  require(panels >= 16, "panels must be >= 16");
}

double alpha_power_integral(const KernelDescriptor& kernel, double alpha, double lo, double hi,
                            int panels) {
  lo = std::max(lo, kernel.support_lo);
  hi = std::min(hi, kernel.support_hi);
  if (!(hi > lo)) return 0.0;
  auto f = [&](double x) { return std::pow(std::fabs(kernel.eval(x)), alpha); };
  return quad::integrate(f, lo, hi, kernel.breakpoints, panels);
}

double alpha_power_tail(const KernelDescriptor& kernel, double alpha, double x, double cut,
                        int panels) {
  require(x >= 0.0, "alpha_power_tail: x must be >= 0");
  return one_sided_tail(kernel, alpha, x, cut, panels, 1.0) +
         one_sided_tail(kernel, alpha, x, cut, panels, -1.0);
}

double alpha_norm(const KernelDescriptor& kernel, double alpha, const AlphaNormQuadrature& quad) {
  quad.validate();
  require(alpha > 0.0 && alpha <= 2.0, "alpha must lie in (0, 2]");
  const double cut = quad.domain_cut;
  const double body = alpha_power_integral(kernel, alpha, -cut, cut, quad.panels);
  const double tails = alpha_power_tail(kernel, alpha, cut, cut, quad.panels);
  return std::pow(body + tails, 1.0 / alpha);
}

std::complex<double> damped_fourier_transform(const KernelDescriptor& kernel, double xi,
                                              double damping) {
  require(damping > 0.0, "damping must be > 0");
  const double reach = 8.0 / damping;
  const double lo = std::max(-reach, kernel.support_lo);
  const double hi = std::min(reach, kernel.support_hi);
  if (!(hi > lo)) return 0.0;

  std::vector<double> cuts{lo, hi};
  for (double b : kernel.breakpoints)
    if (b > lo && b < hi) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  auto weight = [&](double x) { return kernel.eval(x) * std::exp(-0.5 * std::pow(damping * x, 2)); };
  auto re = [&](double x) { return weight(x) * std::cos(xi * x); };
  auto im = [&](double x) { return -weight(x) * std::sin(xi * x); };

  double sum_re = 0.0;
  double sum_im = 0.0;
  constexpr double kPanel = 0.5;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s];
    const double b = cuts[s + 1];
    const int n = std::max(1, static_cast<int>(std::ceil((b - a) / kPanel)));
    const double w = (b - a) / n;
    for (int i = 0; i < n; ++i) {
      const double x0 = a + i * w;
      const double x1 = (i == n - 1) ? b : x0 + w;
      // Panels touching a breakpoint may carry an integrable singularity.
      if (i == 0 || i == n - 1) {
        sum_re += quad::tanh_sinh(re, x0, x1);
        sum_im += quad::tanh_sinh(im, x0, x1);
      } else {
        sum_re += quad::gauss20(re, x0, x1);
        sum_im += quad::gauss20(im, x0, x1);
      }
    }
  }
  return {sum_re / (2.0 * kPi), sum_im / (2.0 * kPi)};
}

}  // namespace stabma
