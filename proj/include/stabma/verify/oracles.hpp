#pragma once

#include <cstdint>

#include "stabma/kernels.hpp"

// Reference computations used by the tests and the acceptance suite. They are
// written independently of the production code paths they check.
namespace stabma::verify {

/// ||Y(k) - Y_{omega,Omega}(k)||_alpha^alpha evaluated panel by panel: the
/// grid value against the kernel on each of the 2 omega Omega cells, plus the
/// two tails beyond Omega.
double discretization_truth(const KernelDescriptor& kernel, double alpha, std::int64_t omega,
                            std::int64_t Omega);

/// Linear fractional stable motion kernel at x, straight from the positive
/// and negative part formula.
double lfsm_reference(double H, double b_plus, double b_minus, double alpha, double t, double x);

/// Partial sum and bound for the extime kernel written as a plain loop.
double extime_bound_reference(double alpha, std::int64_t omega, std::int64_t Omega);

/// c(alpha) through the C library gamma function.
double c_alpha_reference(double alpha);

/// int |g|^2 for the reverse OU kernel: 1 / (2 lambda).
inline double rev_ou_l2_squared(double lambda) { return 1.0 / (2.0 * lambda); }

}  // namespace stabma::verify
