#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace stabma {

/// Linear fractional stable motion with kernel
///   b+ ((t-x)_+^p - (-x)_+^p) + b- ((t-x)_-^p - (-x)_-^p),  p = H - 1/alpha.
struct LfsmForm {
  double H = 0.5;
  double b_plus = 1.0;
  double b_minus = 0.0;
};

/// Stable Levy motion, up to a constant factor.
struct LevyForm {
  double factor = 1.0;
};

/// (1/pi) l1 Z + l2 L, Z the log-fractional stable motion and L Levy motion.
struct LogMixForm {
  double l1 = 0.0;
  double l2 = 0.0;
};

using LocalForm = std::variant<LfsmForm, LevyForm, LogMixForm>;

void validate_local_form(const LocalForm& form);
std::string describe(const LocalForm& form);

enum class KernelFamily { reverse_ou, extime, exfrequency, lfsn };

std::string to_string(KernelFamily family);

struct AlphaInterval {
  double lo = 0.0;
  double hi = 2.0;
  bool lo_closed = false;
  bool hi_closed = true;

  bool contains(double alpha) const;
  std::string describe() const;
};

/// Moving-average kernel g together with its localisability metadata:
///   g(r)/r^gamma -> c0_plus, g(-r)/r^gamma -> c0_minus as r -> 0+,
///   |g(u+h) - g(u)| <= c |h|^a |u|^(gamma-a) for |h| < eta,
///   |g(x)| <= tail_constant |x|^-beta_decay for |x| >= tail_start.
struct KernelDescriptor {
  using TailIntegral = std::function<double(double alpha, double x)>;

  std::string label;
  KernelFamily family = KernelFamily::reverse_ou;
  std::map<std::string, double> params;
  std::function<double(double)> eval;

  double gamma = 0.0;
  double a = 1.0;
  double c = 1.0;
  double eta = 1.0;
  double c0_plus = 0.0;
  double c0_minus = 0.0;
  double beta_decay = std::numeric_limits<double>::infinity();
  double tail_constant = 0.0;
  double tail_start = 1.0;

  // Closed hull of the support, and points where g or a derivative jumps.
  double support_lo = -std::numeric_limits<double>::infinity();
  double support_hi = std::numeric_limits<double>::infinity();
  std::vector<double> breakpoints;

  AlphaInterval alpha_validity;
  // True when the increment metadata above holds, so the generic bound applies.
  bool increment_metadata = true;

  // Closed forms of the integral of |g|^alpha over [x, inf) and (-inf, -x],
  // when known. Empty functions mean "use quadrature".
  TailIntegral right_tail;
  TailIntegral left_tail;

  std::function<LocalForm(double alpha)> local_form;

  double operator()(double x) const { return eval(x); }
  double param(const std::string& name) const;
};

KernelDescriptor reverse_ou_kernel(double lambda);
KernelDescriptor extime_kernel();
KernelDescriptor exfrequency_kernel(double gamma = -0.5);
KernelDescriptor lfsn_kernel(double alpha, double H);

/// Kernel lookup by label ("rev_ou", "extime", "exfrequency", "lfsn").
/// Missing parameters take defaults: lambda 1, gamma -1/2, H 0.7.
KernelDescriptor make_kernel(const std::string& label, const std::map<std::string, double>& params,
                             double alpha);

/// Coefficients of the lfsm tangent when the kernel's transform behaves like
/// (l1 + i l2) xi^-(gamma+1) at high frequency. Throws for gamma = 0, where
/// the tangent is a LogMixForm instead.
std::pair<double, double> fourier_coefficients_b(double l1, double l2, double gamma);

/// h(t, z), the kernel of the tangent process evaluated at time t.
double tangent_kernel(const LocalForm& form, double alpha, double t, double z);

struct AlphaNormQuadrature {
  double domain_cut = 1e3;
  int panels = 64;

  void validate() const;
};

/// ||g||_alpha by quadrature on [-domain_cut, domain_cut] plus the tails,
/// either in closed form or from the power-law envelope. Throws
/// NonIntegrable when beta_decay * alpha <= 1.
double alpha_norm(const KernelDescriptor& kernel, double alpha,
                  const AlphaNormQuadrature& quad = {});

/// Integral of |g|^alpha over [lo, hi], cut at the kernel's breakpoints.
double alpha_power_integral(const KernelDescriptor& kernel, double alpha, double lo, double hi,
                            int panels);

/// Integral of |g|^alpha over |x| >= x (both sides), closed form where the
/// kernel provides one, otherwise quadrature out to `cut` and the envelope
/// beyond it.
double alpha_power_tail(const KernelDescriptor& kernel, double alpha, double x, double cut,
                        int panels);

/// Gaussian-damped transform (1/2pi) int g(x) e^{-i xi x} e^{-(damping x)^2/2} dx.
/// A diagnostic for transform-defined kernels: it equals the true transform
/// smoothed over a window of width `damping` in xi.
std::complex<double> damped_fourier_transform(const KernelDescriptor& kernel, double xi,
                                              double damping = 0.01);

/// I(y) = int_y^inf v^-s sin v dv for 1 < s < 2 and y >= 0.
double oscillatory_tail(double s, double y);

}  // namespace stabma
