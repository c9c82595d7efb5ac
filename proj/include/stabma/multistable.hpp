#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "stabma/kernels.hpp"
#include "stabma/synthesis.hpp"

namespace stabma {

struct ConstantAlpha {
  double alpha = 1.8;
};

/// lo + (hi - lo) / (1 + exp(-rate (t - center))).
struct LogisticAlpha {
  double lo = 1.2;
  double hi = 1.85;
  double rate = 0.005;
  double center = 0.0;
};

/// Piecewise linear through (t, alpha) knots with strictly increasing t.
struct TableAlpha {
  std::vector<std::pair<double, double>> knots;
};

using AlphaFunction = std::variant<ConstantAlpha, LogisticAlpha, TableAlpha>;

void validate_alpha_function(const AlphaFunction& fn);
double eval_alpha(const AlphaFunction& fn, double t);
std::string describe(const AlphaFunction& fn);

/// The logistic profile rising from 1.2 to 1.85 around t = n_points / 2.
LogisticAlpha default_logistic(std::int64_t n_points);

/// c(alpha) = (2 Gamma(1 - alpha) cos(pi alpha / 2) / alpha)^(-1/alpha); alpha != 1.
double c_alpha(double alpha);

struct MultistableConfig {
  SynthesisConfig base;
  AlphaFunction alpha_fn = ConstantAlpha{};
  bool renormalize = false;
  /// Number of equal alpha cells; 0 gives every distinct alpha(t_i) its own line.
  std::int64_t alpha_grid = 64;

  void validate() const;
};

struct AlphaQuantization {
  std::vector<double> line_alpha;
  /// line_of_point[i] is the line used at t = i + 1.
  std::vector<std::int64_t> line_of_point;
};

/// alpha(t) at t = 1..n_points assigned to equal cells of [min, max]; each
/// point takes its cell's midpoint. Only occupied cells become lines.
AlphaQuantization quantize_alpha(const AlphaFunction& fn, std::int64_t n_points,
                                 std::int64_t alpha_grid);

/// Glued path S(t_i) = S_{alpha(t_i)}(t_i): one stable synthesis per alpha
/// line, every line driven by the same noise atoms. With renormalize each
/// line is first mapped affinely onto [-1, 1] using its min and max over all
/// n_points values.
Path synthesize_multistable(const KernelDescriptor& kernel, const MultistableConfig& config,
                            NoiseTrace* trace = nullptr);

}  // namespace stabma
