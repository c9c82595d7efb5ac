#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace stabma {

/// Symmetric alpha-stable law S_alpha(scale, 0, 0). Skewness and shift are
/// always zero. Characteristic function exp(-(scale |xi|)^alpha), so the
/// Gaussian endpoint alpha = 2 has variance 2 scale^2.
struct StableParams {
  double alpha = 2.0;
  double scale = 1.0;

  void validate() const;
};

/// Randomness behind one stable variate: u uniform on (-pi/2, pi/2) and w
/// unit exponential. Atoms are addressed by (seed, index), so streams for
/// different alpha can be driven by the same atoms.
struct NoiseAtom {
  double u = 0.0;
  double w = 1.0;
};

/// Counter-based: a pure function of (seed, index).
NoiseAtom noise_atom(std::uint64_t seed, std::int64_t index) noexcept;

/// Chambers-Mallows-Stuck transform of one atom.
double sas_from_atom(const NoiseAtom& atom, const StableParams& params);

/// Element k is sas_from_atom(noise_atom(seed, first_index + k), params).
std::vector<double> sas_stream(std::uint64_t seed, std::int64_t first_index, std::int64_t count,
                               const StableParams& params);

/// Atoms with the alpha-independent logarithms precomputed. Transforming a
/// block of prepared atoms gives bit-identical values to sas_from_atom.
struct PreparedAtom {
  double u;
  double log_cos_u;
  double log_w;
};

std::vector<PreparedAtom> prepare_atoms(std::uint64_t seed, std::int64_t first_index,
                                        std::int64_t count);

void transform_atoms(std::span<const PreparedAtom> atoms, const StableParams& params,
                     std::span<double> out);

}  // namespace stabma
