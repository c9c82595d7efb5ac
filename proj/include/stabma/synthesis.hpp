#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stabma/kernels.hpp"

namespace stabma {

/// Riemann-sum synthesis of Y(k) = int g(k - x) M(dx), k = 1..n_points, with
/// omega grid points per unit time and the integral cut at |x| <= Omega.
struct SynthesisConfig {
  std::int64_t omega = 1;
  std::int64_t Omega = 1;
  std::int64_t n_points = 1;
  std::uint64_t seed = 0;
  double scale = 1.0;

  void validate() const;
  /// 2 omega Omega.
  std::int64_t weight_count() const;
  /// Noise values consumed: omega (n_points - 1) + 2 omega Omega.
  std::int64_t noise_count() const;
};

/// Upper limit on the working memory of one synthesis, checked before any
/// allocation.
inline constexpr std::size_t kSynthesisMemoryBudget = std::size_t{4} << 30;

/// Approximate peak bytes used by synthesize_fft for this config.
std::size_t synthesis_memory_estimate(const SynthesisConfig& config);

using Meta = std::map<std::string, std::string>;

struct Path {
  std::int64_t start_index = 1;
  std::vector<double> values;
  double dt = 1.0;
  Meta meta;
};

/// Records which noise atoms each synthesis consumed.
struct NoiseTrace {
  struct Use {
    std::uint64_t seed;
    std::int64_t first_atom;
    std::int64_t count;
    double alpha;
  };
  std::vector<Use> uses;
};

/// a(1..2 omega Omega): omega^(-1/alpha) g((j-1)/omega - Omega) for j <= omega Omega,
/// omega^(-1/alpha) g(j/omega - Omega) above.
std::vector<double> build_weights(const KernelDescriptor& kernel, double alpha, std::int64_t omega,
                                  std::int64_t Omega);

/// The noise value Z(n) is driven by atom n + omega (Omega - 1), so the first
/// value any synthesis touches, Z(omega (1 - Omega)), is atom 0.
std::int64_t atom_index(const SynthesisConfig& config, std::int64_t n);

/// W(omega (k + Omega)) for k = 1..N, with W the convolution of the weights and
/// the noise, computed by FFT. Values are multiplied by config.scale.
Path synthesize_fft(const KernelDescriptor& kernel, double alpha, const SynthesisConfig& config,
                    NoiseTrace* trace = nullptr);

/// Same sum evaluated term by term. O(N omega Omega); meant as a reference.
Path synthesize_direct(const KernelDescriptor& kernel, double alpha, const SynthesisConfig& config,
                       NoiseTrace* trace = nullptr);

/// Cumulative sum times dt.
Path integrate_path(const Path& path);

std::string format_number(double value);
void describe_config(const SynthesisConfig& config, Meta& meta);
void describe_kernel(const KernelDescriptor& kernel, Meta& meta);

}  // namespace stabma
