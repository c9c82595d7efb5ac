#pragma once

#include <cstdint>
#include <string>

#include "stabma/kernels.hpp"

namespace stabma {

/// Bound on ||Y(k) - Y_{omega,Omega}(k)||_alpha^alpha split into the grid term
/// and the cut-off term.
struct BoundBreakdown {
  double alpha = 2.0;
  double discretization = 0.0;
  double truncation = 0.0;
  double total_alpha_power = 0.0;
  double err_scale = 0.0;
  std::string formula;
};

BoundBreakdown make_breakdown(double alpha, double discretization, double truncation,
                              std::string formula);

/// Increment-metadata bound:
///   2 c^alpha / ((1 + a alpha) omega^(1 + gamma alpha)) sum_{j <= omega Omega} j^-((a - gamma) alpha)
///   + int_{|x| >= Omega} |g|^alpha.
/// Throws InapplicableBound when the kernel has no increment metadata or
/// omega <= 1/eta.
BoundBreakdown generic_bound(const KernelDescriptor& kernel, double alpha, std::int64_t omega,
                             std::int64_t Omega);

/// Reverse Ornstein-Uhlenbeck kernel, integrating the panel errors exactly
/// up to the increment constant kappa = max(2 lambda, omega (e^(lambda/omega) - 1)).
BoundBreakdown rev_ou_bound(double lambda, double alpha, std::int64_t omega, std::int64_t Omega);

BoundBreakdown lfsn_bound(double alpha, double H, std::int64_t omega, std::int64_t Omega);

BoundBreakdown extime_bound(double alpha, std::int64_t omega, std::int64_t Omega);

/// Transform-defined kernel with gamma = -1/2.
BoundBreakdown exfrequency_bound(double alpha, std::int64_t omega, std::int64_t Omega);
/// Same with the partial sum replaced by alpha / (alpha - 1).
BoundBreakdown exfrequency_bound_simplified(double alpha, std::int64_t omega, std::int64_t Omega);

/// The sharpest closed form available for the kernel's family.
BoundBreakdown best_bound(const KernelDescriptor& kernel, double alpha, std::int64_t omega,
                          std::int64_t Omega);

struct TuningResult {
  double asymptotic_seed = 0.0;
  std::int64_t Omega = 1;
  std::string rule;
  BoundBreakdown breakdown;
};

/// Cut-off Omega for a given omega. Power-law kernels use
/// Omega = omega^((1 + alpha gamma) / (alpha beta - 1)), which equalises the
/// orders of the two terms. The reverse OU bound has an exponential tail and
/// uses the smallest Omega whose truncation term drops below the
/// discretization term; the asymptotic seed there is ln(omega) / lambda.
TuningResult optimal_Omega(const KernelDescriptor& kernel, double alpha, std::int64_t omega);

inline constexpr double kMaxTunedOmega = 1e12;

}  // namespace stabma
