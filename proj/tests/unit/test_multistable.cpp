#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stabma/errors.hpp"
#include "stabma/multistable.hpp"
#include "stabma/verify/oracles.hpp"

using namespace stabma;

namespace {

MultistableConfig small_config(AlphaFunction fn, std::int64_t grid, std::uint64_t seed = 5) {
  MultistableConfig c;
  c.base = SynthesisConfig{8, 6, 400, seed, 1.0};
  c.alpha_fn = std::move(fn);
  c.alpha_grid = grid;
  return c;
}

bool has_advisory(const Path& p, const std::string& needle) {
  for (const auto& [key, value] : p.meta)
    if (key.rfind("advisory_", 0) == 0 && value.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_SUITE("multistable") {
  TEST_CASE("alpha functions") {
    const LogisticAlpha paper = default_logistic(7392);
    CHECK(paper.center == 3696.0);
    CHECK(eval_alpha(paper, 3696.0) == doctest::Approx(1.525).epsilon(1e-15));
    CHECK(eval_alpha(paper, -1e6) == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(eval_alpha(paper, 1e6) == doctest::Approx(1.85).epsilon(1e-12));
    CHECK(eval_alpha(ConstantAlpha{1.8}, -5.0) == 1.8);
    CHECK(eval_alpha(ConstantAlpha{1.8}, 1e9) == 1.8);
    const TableAlpha table{{{0.0, 1.2}, {10.0, 1.8}, {20.0, 1.4}}};
    CHECK(eval_alpha(table, 5.0) == doctest::Approx(1.5));
    CHECK(eval_alpha(table, 15.0) == doctest::Approx(1.6));
    CHECK(eval_alpha(table, 20.0) == doctest::Approx(1.4));
    CHECK_THROWS_AS(eval_alpha(table, 20.5), ValidationError);
    CHECK_THROWS_AS(eval_alpha(table, -0.5), ValidationError);
    CHECK_THROWS_AS(validate_alpha_function(LogisticAlpha{1.8, 1.2, 0.1, 0.0}), ValidationError);
    CHECK_THROWS_AS(validate_alpha_function(ConstantAlpha{2.0}), ValidationError);
    CHECK_THROWS_AS(validate_alpha_function(TableAlpha{{{1.0, 1.2}, {1.0, 1.3}}}), ValidationError);
  }

  TEST_CASE("c(alpha)") {
    CHECK(c_alpha(0.5) == doctest::Approx(1.0 / (8.0 * std::numbers::pi)).epsilon(1e-13));
    CHECK(c_alpha(0.5) == doctest::Approx(0.0397887).epsilon(1e-6));
    for (double a : {0.3, 0.9, 1.1, 1.5, 1.95})
      CHECK(c_alpha(a) == doctest::Approx(verify::c_alpha_reference(a)).epsilon(1e-10));
    CHECK(c_alpha(1.5) > 0.0);
    CHECK(std::fabs(c_alpha(1.5 + 1e-6) - c_alpha(1.5)) < 1e-4);
    CHECK_THROWS_AS(c_alpha(1.0), ValidationError);
    CHECK_THROWS_AS(c_alpha(2.0), ValidationError);
  }

  TEST_CASE("quantization") {
    // Linear alpha: with one cell per point every point gets its own line.
    const std::int64_t n = 50;
    const TableAlpha linear{{{1.0, 1.3}, {static_cast<double>(n), 1.8}}};
    auto q = quantize_alpha(linear, n, n);
    CHECK(q.line_alpha.size() == static_cast<std::size_t>(n));
    q = quantize_alpha(default_logistic(n), n, 0);
    CHECK(q.line_alpha.size() == static_cast<std::size_t>(n));
    q = quantize_alpha(default_logistic(n), n, 1);
    CHECK(q.line_alpha.size() == 1);
    for (std::int64_t g : {1, 3, 8, 64}) {
      const auto fn = default_logistic(400);
      q = quantize_alpha(fn, 400, g);
      double lo = 2.0, hi = 0.0;
      for (std::int64_t t = 1; t <= 400; ++t) {
        lo = std::min(lo, eval_alpha(fn, t));
        hi = std::max(hi, eval_alpha(fn, t));
      }
      for (std::int64_t t = 1; t <= 400; ++t) {
        const double err = std::fabs(q.line_alpha[q.line_of_point[t - 1]] - eval_alpha(fn, t));
        CHECK(err <= (hi - lo) / (2.0 * g) * (1.0 + 1e-12));
      }
    }
  }

  TEST_CASE("constant alpha equals plain synthesis bit for bit") {
    for (const auto& k : {reverse_ou_kernel(0.5), extime_kernel(), lfsn_kernel(1.7, 0.7)}) {
      const auto c = small_config(ConstantAlpha{1.7}, 64);
      const auto glued = synthesize_multistable(k, c);
      const auto plain = synthesize_fft(k, 1.7, c.base);
      CHECK(glued.values == plain.values);
    }
  }

  TEST_CASE("one alpha cell equals plain synthesis at the cell midpoint") {
    const auto k = reverse_ou_kernel(1.0);
    const auto c = small_config(default_logistic(400), 1);
    const auto q = quantize_alpha(c.alpha_fn, c.base.n_points, 1);
    const auto glued = synthesize_multistable(k, c);
    CHECK(glued.values == synthesize_fft(k, q.line_alpha[0], c.base).values);
    CHECK(glued.meta.at("alpha_lines") == "1");
  }

  TEST_CASE("glued values come from their own line") {
    const auto k = extime_kernel();
    const auto c = small_config(LogisticAlpha{1.3, 1.9, 0.05, 200.0}, 6);
    const auto q = quantize_alpha(c.alpha_fn, c.base.n_points, c.alpha_grid);
    const auto glued = synthesize_multistable(k, c);
    for (std::size_t l = 0; l < q.line_alpha.size(); ++l) {
      const auto line = synthesize_fft(k, q.line_alpha[l], c.base);
      for (std::size_t i = 0; i < glued.values.size(); ++i)
        if (q.line_of_point[i] == static_cast<std::int64_t>(l))
          CHECK(glued.values[i] == doctest::Approx(line.values[i]).epsilon(1e-12).scale(1.0));
    }
  }

  TEST_CASE("all lines share the noise atoms") {
    const auto k = reverse_ou_kernel(1.0);
    auto c = small_config(default_logistic(400), 8);
    c.renormalize = true;
    NoiseTrace trace;
    synthesize_multistable(k, c, &trace);
    REQUIRE(trace.uses.size() > 1);
    for (const auto& u : trace.uses) {
      CHECK(u.seed == trace.uses[0].seed);
      CHECK(u.first_atom == trace.uses[0].first_atom);
      CHECK(u.count == trace.uses[0].count);
    }
    // Windowed lines address atoms by absolute index: same seed, offset by omega (k0 - 1).
    c.renormalize = false;
    NoiseTrace windowed;
    const auto q = quantize_alpha(c.alpha_fn, c.base.n_points, c.alpha_grid);
    synthesize_multistable(k, c, &windowed);
    for (const auto& u : windowed.uses) {
      CHECK(u.seed == c.base.seed);
      CHECK(u.first_atom % c.base.omega == 0);
    }
    CHECK(windowed.uses.size() == q.line_alpha.size());
  }

  TEST_CASE("renormalized lines span [-1, 1]") {
    const auto k = extime_kernel();
    auto c = small_config(LogisticAlpha{1.3, 1.9, 0.05, 200.0}, 1);
    c.renormalize = true;
    const auto p = synthesize_multistable(k, c);
    const auto [mn, mx] = std::minmax_element(p.values.begin(), p.values.end());
    CHECK(*mn == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(*mx == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.meta.at("renormalize") == "per_line_min_max");
    CHECK(p.meta.at("degenerate_lines") == "0");
  }

  TEST_CASE("degenerate lines become zeros") {
    KernelDescriptor zero;
    zero.label = "zero";
    zero.eval = [](double) { return 0.0; };
    auto c = small_config(LogisticAlpha{1.3, 1.9, 0.05, 200.0}, 4);
    c.renormalize = true;
    const auto p = synthesize_multistable(zero, c);
    CHECK(std::all_of(p.values.begin(), p.values.end(), [](double v) { return v == 0.0; }));
    CHECK(p.meta.at("degenerate_lines") == p.meta.at("alpha_lines"));
  }

  TEST_CASE("refining the alpha grid converges") {
    const auto k = reverse_ou_kernel(1.0);
    std::vector<double> d4, d16, d64;
    for (std::uint64_t seed = 1; seed <= 7; ++seed) {
      auto run = [&](std::int64_t g) {
        auto c = small_config(LogisticAlpha{1.3, 1.9, 0.02, 200.0}, g, seed);
        c.renormalize = true;
        return synthesize_multistable(k, c).values;
      };
      const auto p4 = run(4), p8 = run(8), p16 = run(16), p32 = run(32), p64 = run(64), p128 = run(128);
      auto gap = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
        return s / static_cast<double>(a.size());
      };
      d4.push_back(gap(p4, p8));
      d16.push_back(gap(p16, p32));
      d64.push_back(gap(p64, p128));
    }
    auto median = [](std::vector<double> v) {
      std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
      return v[v.size() / 2];
    };
    CHECK(median(d16) < median(d4));
    CHECK(median(d64) < median(d16));
  }

  TEST_CASE("advisories") {
    const auto table = TableAlpha{{{0.0, 1.5}, {400.0, 1.7}}};
    CHECK(has_advisory(synthesize_multistable(reverse_ou_kernel(1.0), small_config(table, 4)),
                       "differentiable"));
    const auto across = LogisticAlpha{0.8, 1.4, 0.05, 200.0};
    const auto p = synthesize_multistable(reverse_ou_kernel(1.0), small_config(across, 4));
    CHECK(has_advisory(p, "contains 1"));
    CHECK(has_advisory(p, "localisable interval"));
    CHECK_FALSE(has_advisory(synthesize_multistable(reverse_ou_kernel(1.0),
                                                    small_config(default_logistic(400), 4)),
                             "localisable"));
  }

  TEST_CASE("config validation") {
    auto c = small_config(ConstantAlpha{1.5}, 401);
    CHECK_THROWS_AS(synthesize_multistable(extime_kernel(), c), ValidationError);
    c.alpha_grid = -1;
    CHECK_THROWS_AS(synthesize_multistable(extime_kernel(), c), ValidationError);
  }
}
