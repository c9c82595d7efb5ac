#pragma once

#include <functional>
#include <span>

namespace stabma::quad {

using Integrand = std::function<double(double)>;

/// Integral of f over [a, b]. The range is cut at every breakpoint inside it,
/// then each segment is split into `pieces` sub-intervals spaced uniformly in
/// asinh(x / unit) (uniform near the origin, geometric far from it). Each
/// sub-interval is integrated by tanh-sinh, which tolerates integrable
/// endpoint singularities. Non-finite integrand values count as zero.
double integrate(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                 int pieces, double unit = 1.0);

/// Plain tanh-sinh on one interval.
double tanh_sinh(const Integrand& f, double a, double b);

/// Fixed 20-point Gauss-Legendre on one interval (smooth integrands only).
double gauss20(const Integrand& f, double a, double b);

}  // namespace stabma::quad
