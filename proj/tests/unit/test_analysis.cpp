#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "stabma/analysis.hpp"
#include "stabma/errors.hpp"
#include "stabma/stable_rng.hpp"

using namespace stabma;

namespace {

std::vector<double> xi_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 30; ++i) g.push_back(0.1 * i);
  return g;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("D(r) vanishes at t = 0") {
    for (const auto& k : {reverse_ou_kernel(1.0), extime_kernel(), lfsn_kernel(1.8, 0.7)})
      for (double r : {1.0, 0.01}) CHECK(lalpha_distance(k, 1.8, k.local_form(1.8), 0.0, r) == 0.0);
  }

  TEST_CASE("D(r) decreases for reverse OU") {
    const auto k = reverse_ou_kernel(1.0);
    const auto f = k.local_form(1.8);
    const double d1 = lalpha_distance(k, 1.8, f, 1.0, 1.0);
    const double d2 = lalpha_distance(k, 1.8, f, 1.0, 1e-1);
    const double d3 = lalpha_distance(k, 1.8, f, 1.0, 1e-3);
    CHECK(d3 < d2);
    CHECK(d2 < d1);
  }

  TEST_CASE("D(r) for reverse OU in closed form") {
    // f_r - h = e^{rz} (e^{rt} - 1) on z <= -t and e^{rz} - 1 on (-t, 0] for t > 0.
    const double a = 1.8, t = 1.0, r = 0.1;
    const auto k = reverse_ou_kernel(1.0);
    double ref = std::pow(std::expm1(r * t), a) * std::exp(-a * r * t) / (a * r);
    const int m = 200000;
    for (int i = 0; i < m; ++i) {
      const double z = -t + t * (i + 0.5) / m;
      ref += std::pow(-std::expm1(r * z), a) * t / m;
    }
    CHECK(lalpha_distance(k, a, k.local_form(a), t, r) == doctest::Approx(ref).epsilon(1e-5));
  }

  TEST_CASE("D(r) decreases for extime") {
    const auto k = extime_kernel();
    const auto f = k.local_form(1.8);
    CHECK(lalpha_distance(k, 1.8, f, 1.0, 1e-4) <= 0.05 * lalpha_distance(k, 1.8, f, 1.0, 1.0));
  }

  TEST_CASE("quadrature refinement is stable") {
    for (const auto& k : {reverse_ou_kernel(1.0), extime_kernel()}) {
      const auto f = k.local_form(1.8);
      const double coarse = lalpha_distance(k, 1.8, f, 0.5, 1e-2, QuadConfig{1e3, 64});
      const double fine = lalpha_distance(k, 1.8, f, 0.5, 1e-2, QuadConfig{1e3, 128});
      CHECK(fine == doctest::Approx(coarse).epsilon(0.01));
    }
    CHECK_THROWS_AS(QuadConfig({1e3, 32}).validate(), ValidationError);
  }

  TEST_CASE("fractional moment constant at the gaussian endpoint") {
    for (double p : {0.25, 0.5, 1.0}) {
      const double ref = std::pow(2.0, p) * std::tgamma((p + 1.0) / 2.0) / std::sqrt(std::numbers::pi);
      CHECK(fractional_moment_constant(p, 2.0) == doctest::Approx(ref).epsilon(1e-13));
    }
  }

  TEST_CASE("scale estimation") {
    const auto x = sas_stream(404, 0, 100000, {1.8, 2.0});
    const auto e = estimate_scale(x, 1.8);
    CHECK(e.value == doctest::Approx(2.0).epsilon(0.05));
    CHECK(e.moment_order == doctest::Approx(0.45));
    CHECK(e.std_error > 0.0);
    const auto g = sas_stream(405, 0, 100000, {2.0, 1.0});
    CHECK(estimate_scale(g, 2.0).value == doctest::Approx(1.0).epsilon(0.05));
    const std::vector<double> zeros(100, 0.0);
    const auto z = estimate_scale(zeros, 1.5);
    CHECK(z.value == 0.0);
    CHECK(z.std_error == 0.0);
    std::vector<double> y = x;
    for (double& v : y) v *= 3.5;
    CHECK(estimate_scale(y, 1.8).value == doctest::Approx(3.5 * e.value).epsilon(1e-12));
    CHECK_THROWS_AS(estimate_scale(std::vector<double>{}, 1.5), ValidationError);
  }

  TEST_CASE("scaling exponent") {
    Path linear;
    for (int k = 1; k <= 4096; ++k) linear.values.push_back(k);
    const std::vector<std::int64_t> lags{1, 2, 4, 8, 16, 32};
    CHECK(estimate_scaling_exponent(linear, 1.5, lags) == doctest::Approx(1.0).epsilon(1e-12));

    const auto steps = sas_stream(8, 0, 1 << 16, {1.5, 1.0});
    Path levy;
    double s = 0.0;
    for (double v : steps) levy.values.push_back(s += v);
    const double h = estimate_scaling_exponent(levy, 1.5, lags);
    CHECK(h == doctest::Approx(1.0 / 1.5).epsilon(0.15));
    Path affine = levy;
    for (double& v : affine.values) v = -2.5 * v + 7.0;
    CHECK(estimate_scaling_exponent(affine, 1.5, lags) == doctest::Approx(h).epsilon(1e-9));

    CHECK_THROWS_AS(estimate_scaling_exponent(linear, 1.5, std::vector<std::int64_t>{4}), ValidationError);
    CHECK_THROWS_AS(estimate_scaling_exponent(linear, 1.5, std::vector<std::int64_t>{0, 2}), ValidationError);
  }

  TEST_CASE("empirical CF distance") {
    const auto x = sas_stream(12, 0, 200000, {1.2, 1.0});
    CHECK(empirical_cf_distance(x, 1.2, 1.0, std::vector<double>{0.0}) == 0.0);
    CHECK(empirical_cf_distance(x, 1.2, 1.0, xi_grid()) <= 0.02);
    CHECK(empirical_cf_distance(x, 1.9, 1.0, xi_grid()) >= 0.05);
  }
}
