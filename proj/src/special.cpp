#include "stabma/special.hpp"

#include <array>
#include <cmath>

#include "stabma/errors.hpp"

namespace stabma {
namespace {

constexpr std::int64_t kHead = 1000;

double direct_sum(double s, std::int64_t n) {
  double sum = 0.0;
  double carry = 0.0;
  for (std::int64_t j = n; j >= 1; --j) {
    const double term = std::exp(-s * std::log(static_cast<double>(j)));
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

double partial_zeta_euler_maclaurin(double s, std::int64_t n) {
  require(n >= 0, "partial_zeta: n must be >= 0");
  if (n <= 2 * kHead) return direct_sum(s, n);
  const double head = direct_sum(s, kHead);
  const double a = static_cast<double>(kHead + 1);
  const double b = static_cast<double>(n);
  const double integral =
      (s == 1.0) ? std::log(b / a) : (std::pow(b, 1.0 - s) - std::pow(a, 1.0 - s)) / (1.0 - s);
  double tail = integral + 0.5 * (std::pow(a, -s) + std::pow(b, -s));
  // B_{2k} / (2k)! for k = 1..4
  constexpr std::array<double, 4> coef{1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0};
  double rising = s;  // (s)_{2k-1}
  for (std::size_t k = 0; k < coef.size(); ++k) {
    const int r = static_cast<int>(2 * k + 1);
    // f^{(r)}(x) = (-1)^r (s)_r x^{-s-r}, r odd
    const double deriv_b = -rising * std::pow(b, -s - r);
    const double deriv_a = -rising * std::pow(a, -s - r);
    tail += coef[k] * (deriv_b - deriv_a);
    rising *= (s + r) * (s + r + 1);
  }
  return head + tail;
}

double partial_zeta(double s, std::int64_t n) {
  require(n >= 0, "partial_zeta: n must be >= 0");
  if (n <= kDirectSumLimit) return direct_sum(s, n);
  return partial_zeta_euler_maclaurin(s, n);
}

}  // namespace stabma
