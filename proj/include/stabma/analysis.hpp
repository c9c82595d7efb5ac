#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stabma/kernels.hpp"
#include "stabma/synthesis.hpp"

namespace stabma {

enum class TailHandling { power_law, none };

struct QuadConfig {
  double z_cut = 1e3;
  int panels = 64;
  TailHandling tail_handling = TailHandling::power_law;

  void validate() const;
};

/// D(r) = int |f_r(z) - h(t, z)|^alpha dz with f_r(z) = r^-gamma (g(r(t+z)) - g(rz))
/// and h the tangent kernel. The integral runs over |z| <= z_cut max(1, 1/r);
/// beyond that the integrand is extended as a power law with the exponent
/// (gamma - a) alpha of the increment envelope.
double lalpha_distance(const KernelDescriptor& kernel, double alpha, const LocalForm& form, double t,
                       double r, const QuadConfig& quad = {});

struct ScaleEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double moment_order = 0.0;
};

/// Scale of a symmetric alpha-stable sample from its absolute moment of
/// order p = alpha/4, with a standard error from 8 contiguous blocks.
ScaleEstimate estimate_scale(std::span<const double> samples, double alpha_assumed);

/// E|X|^p / sigma^p for X ~ S_alpha(sigma, 0, 0).
double fractional_moment_constant(double p, double alpha);

/// Least-squares slope of log scale(Y(k + lag) - Y(k)) against log lag.
double estimate_scaling_exponent(const Path& path, double alpha_assumed,
                                 std::span<const std::int64_t> lags);

/// sup over xi of |mean exp(i xi X) - exp(-(scale |xi|)^alpha)|.
double empirical_cf_distance(std::span<const double> samples, double alpha, double scale,
                             std::span<const double> xi_grid);

}  // namespace stabma
