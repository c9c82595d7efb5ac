#include "stabma/stable_rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stabma/errors.hpp"

namespace stabma {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// 53 random bits mapped to the open interval (0, 1).
constexpr double open_unit(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Shared by the scalar and block paths so both produce identical bits.
inline double cms(double u, double log_cos_u, double log_w, double alpha) {
  if (alpha == 1.0) return std::tan(u);
  const double one_minus = 1.0 - alpha;
  const double log_tail = std::log(std::cos(one_minus * u)) - log_w;
  return std::sin(alpha * u) * std::exp((one_minus * log_tail - log_cos_u) / alpha);
}

}  // namespace

void StableParams::validate() const {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 2.0, "alpha must lie in (0, 2]");
  require(std::isfinite(scale) && scale >= 0.0, "scale must be finite and >= 0");
}

NoiseAtom noise_atom(std::uint64_t seed, std::int64_t index) noexcept {
  const std::uint64_t key = mix64(seed + kGolden);
  const auto counter = static_cast<std::uint64_t>(index);
  const std::uint64_t r1 = mix64(key ^ mix64(2 * counter * kGolden + 1));
  const std::uint64_t r2 = mix64(key ^ mix64((2 * counter + 1) * kGolden + 1));
  return {std::numbers::pi * (open_unit(r1) - 0.5), -std::log(open_unit(r2))};
}

double sas_from_atom(const NoiseAtom& atom, const StableParams& params) {
  params.validate();
  if (params.scale == 0.0) return 0.0;
  return params.scale * cms(atom.u, std::log(std::cos(atom.u)), std::log(atom.w), params.alpha);
}

std::vector<double> sas_stream(std::uint64_t seed, std::int64_t first_index, std::int64_t count,
                               const StableParams& params) {
  params.validate();
  require(count >= 0, "count must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k)
    out[static_cast<std::size_t>(k)] = sas_from_atom(noise_atom(seed, first_index + k), params);
  return out;
}

std::vector<PreparedAtom> prepare_atoms(std::uint64_t seed, std::int64_t first_index,
                                        std::int64_t count) {
  require(count >= 0, "count must be >= 0");
  std::vector<PreparedAtom> atoms(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k) {
    const NoiseAtom a = noise_atom(seed, first_index + k);
    atoms[static_cast<std::size_t>(k)] = {a.u, std::log(std::cos(a.u)), std::log(a.w)};
  }
  return atoms;
}

void transform_atoms(std::span<const PreparedAtom> atoms, const StableParams& params,
                     std::span<double> out) {
  params.validate();
  require(out.size() >= atoms.size(), "output span too short");
  if (params.scale == 0.0) {
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(atoms.size()), 0.0);
    return;
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const PreparedAtom& a = atoms[i];
    out[i] = params.scale * cms(a.u, a.log_cos_u, a.log_w, params.alpha);
  }
}

}  // namespace stabma
