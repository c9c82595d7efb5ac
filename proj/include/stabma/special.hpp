#pragma once

#include <cstdint>

namespace stabma {

/// sum_{j=1}^{n} j^{-s}. Summed term by term (smallest terms first, compensated)
/// up to kDirectSumLimit terms; beyond that the first terms are summed directly
/// and the rest by Euler-Maclaurin.
double partial_zeta(double s, std::int64_t n);

inline constexpr std::int64_t kDirectSumLimit = 100'000'000;

/// Euler-Maclaurin route for the same sum, exposed so it can be checked
/// against the direct sum.
double partial_zeta_euler_maclaurin(double s, std::int64_t n);

/// x_+^p: x^p for x > 0 and 0 otherwise (so p = 0 gives the indicator of x > 0).
inline double positive_power(double x, double p);

}  // namespace stabma

#include <cmath>

inline double stabma::positive_power(double x, double p) {
  if (!(x > 0.0)) return 0.0;
  return p == 0.0 ? 1.0 : std::pow(x, p);
}
