#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "stabma/fft_convolve.hpp"
#include "stabma/stable_rng.hpp"
#include "stabma/synthesis.hpp"

namespace stabma::detail {

/// State shared by several syntheses over the same kernel, (omega, Omega) and
/// seed: the kernel sampled on the weight grid, its spectra per FFT size, and
/// optionally a block of prepared noise atoms.
struct LineWorkspace {
  std::vector<double> g_grid;
  std::map<std::size_t, std::unique_ptr<RealFft>> ffts;
  std::map<std::size_t, std::vector<std::complex<double>>> g_spectra;
  std::int64_t atoms_first = 0;
  std::vector<PreparedAtom> atoms;
};

/// Kernel values at the weight arguments, without the omega^(-1/alpha) factor.
std::vector<double> weight_grid(const KernelDescriptor& kernel, std::int64_t omega,
                                std::int64_t Omega);

/// W(omega (k + Omega)) for k_first <= k <= k_last at unit scale.
std::vector<double> synthesize_range(const KernelDescriptor& kernel, double alpha,
                                     const SynthesisConfig& config, std::int64_t k_first,
                                     std::int64_t k_last, LineWorkspace& ws, NoiseTrace* trace);

}  // namespace stabma::detail
