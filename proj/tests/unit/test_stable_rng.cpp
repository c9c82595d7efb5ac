#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "stabma/analysis.hpp"
#include "stabma/errors.hpp"
#include "stabma/stable_rng.hpp"

using namespace stabma;

TEST_SUITE("stable_rng") {
  TEST_CASE("atoms are a pure function of seed and index") {
    const NoiseAtom a = noise_atom(7, 3);
    const NoiseAtom b = noise_atom(7, 3);
    CHECK(a.u == b.u);
    CHECK(a.w == b.w);
    const NoiseAtom c = noise_atom(8, 3);
    CHECK((c.u != a.u || c.w != a.w));
  }

  TEST_CASE("atom ranges and exponential mean") {
    double sum_w = 0.0;
    double sum_u = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const NoiseAtom a = noise_atom(11, i);
      REQUIRE(a.u > -std::numbers::pi / 2);
      REQUIRE(a.u < std::numbers::pi / 2);
      REQUIRE(a.w > 0.0);
      sum_w += a.w;
      sum_u += a.u;
    }
    CHECK(sum_w / n == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(sum_u / n) < 0.02);
  }

  TEST_CASE("gaussian endpoint has variance 2 scale^2") {
    const auto x = sas_stream(2024, 0, 200000, {2.0, 1.0});
    double m = 0.0;
    for (double v : x) m += v;
    m /= static_cast<double>(x.size());
    double var = 0.0;
    for (double v : x) var += (v - m) * (v - m);
    var /= static_cast<double>(x.size() - 1);
    CHECK(var == doctest::Approx(2.0).epsilon(0.025));
  }

  TEST_CASE("empirical characteristic function at xi = 1") {
    const auto x = sas_stream(99, 0, 200000, {1.8, 1.0});
    std::complex<double> cf = 0.0;
    for (double v : x) cf += std::exp(std::complex<double>(0.0, v));
    cf /= static_cast<double>(x.size());
    CHECK(std::abs(cf - std::exp(-1.0)) < 0.02);
  }

  TEST_CASE("CF sup distance over the standard grid") {
    std::vector<double> grid;
    for (int i = 1; i <= 30; ++i) grid.push_back(0.1 * i);
    for (double alpha : {0.8, 1.0, 1.5}) {
      const auto x = sas_stream(5, 0, 200000, {alpha, 1.3});
      CHECK(empirical_cf_distance(x, alpha, 1.3, grid) <= 0.02);
    }
  }

  TEST_CASE("scale zero gives exact zeros and scaling is exact") {
    const NoiseAtom a = noise_atom(1, 10);
    CHECK(sas_from_atom(a, {1.5, 0.0}) == 0.0);
    for (double alpha : {0.6, 1.0, 1.7, 2.0}) {
      const double base = sas_from_atom(a, {alpha, 1.0});
      CHECK(sas_from_atom(a, {alpha, 3.0}) == 3.0 * base);
    }
  }

  TEST_CASE("rejects alpha outside (0, 2]") {
    const NoiseAtom a = noise_atom(1, 1);
    CHECK_THROWS_AS(sas_from_atom(a, {0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(sas_from_atom(a, {2.1, 1.0}), ValidationError);
    CHECK_THROWS_AS(sas_from_atom(a, {1.5, -1.0}), ValidationError);
  }

  TEST_CASE("streams") {
    CHECK(sas_stream(3, 0, 0, {1.5, 1.0}).empty());
    const auto s1 = sas_stream(3, 100, 500, {1.5, 1.0});
    const auto s2 = sas_stream(3, 100, 500, {1.5, 1.0});
    CHECK(s1 == s2);
    for (std::size_t k = 0; k < s1.size(); k += 37)
      CHECK(s1[k] == sas_from_atom(noise_atom(3, 100 + static_cast<std::int64_t>(k)), {1.5, 1.0}));
  }

  TEST_CASE("streams at different alpha share signs") {
    const auto lo = sas_stream(17, 0, 20000, {1.2, 1.0});
    const auto hi = sas_stream(17, 0, 20000, {1.9, 1.0});
    int mismatched = 0;
    for (std::size_t i = 0; i < lo.size(); ++i)
      if ((lo[i] > 0) != (hi[i] > 0)) ++mismatched;
    CHECK(mismatched == 0);
  }

  TEST_CASE("prepared atoms give identical values") {
    const auto atoms = prepare_atoms(21, 50, 1000);
    for (double alpha : {0.7, 1.0, 1.45, 2.0}) {
      std::vector<double> out(atoms.size());
      transform_atoms(atoms, {alpha, 1.0}, out);
      CHECK(out == sas_stream(21, 50, 1000, {alpha, 1.0}));
    }
  }
}
