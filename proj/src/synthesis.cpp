#include "stabma/synthesis.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "stabma/errors.hpp"
#include "synthesis_detail.hpp"

namespace stabma {
namespace {

constexpr std::int64_t kMaxIndex = std::int64_t{1} << 52;

bool mul_overflows(std::int64_t a, std::int64_t b) { return a != 0 && b > kMaxIndex / a; }

}  // namespace

void SynthesisConfig::validate() const {
  require(omega >= 1, "omega must be >= 1");
  require(Omega >= 1, "Omega must be >= 1");
  require(n_points >= 1, "n_points must be >= 1");
  require(std::isfinite(scale) && scale > 0.0, "scale must be finite and > 0");
  require(!mul_overflows(omega, Omega) && !mul_overflows(2 * omega, Omega),
          "omega * Omega is too large");
  require(!mul_overflows(omega, n_points) && omega * n_points + 2 * omega * Omega < kMaxIndex,
          "omega * n_points is too large");
}

std::int64_t SynthesisConfig::weight_count() const { return 2 * omega * Omega; }

std::int64_t SynthesisConfig::noise_count() const {
  return omega * (n_points - 1) + weight_count();
}

std::size_t synthesis_memory_estimate(const SynthesisConfig& config) {
  config.validate();
  const auto fft = static_cast<double>(next_pow2(static_cast<std::size_t>(config.noise_count())));
  const auto weights = static_cast<double>(config.weight_count());
  const auto noise = static_cast<double>(config.noise_count());
  // FFT buffers, two spectra and the output, weight grid, atoms and values.
  const double bytes = fft * (8.0 + 16.0 + 8.0) + fft * 16.0 + weights * 8.0 + noise * (24.0 + 8.0);
  return bytes >= static_cast<double>(std::numeric_limits<std::size_t>::max())
             ? std::numeric_limits<std::size_t>::max()
             : static_cast<std::size_t>(bytes);
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void describe_config(const SynthesisConfig& config, Meta& meta) {
  meta["omega"] = std::to_string(config.omega);
  meta["Omega"] = std::to_string(config.Omega);
  meta["n_points"] = std::to_string(config.n_points);
  meta["seed"] = std::to_string(config.seed);
  meta["scale"] = format_number(config.scale);
}

void describe_kernel(const KernelDescriptor& kernel, Meta& meta) {
  meta["kernel"] = kernel.label;
  for (const auto& [name, value] : kernel.params) meta["kernel_" + name] = format_number(value);
}

std::int64_t atom_index(const SynthesisConfig& config, std::int64_t n) {
  return n + config.omega * (config.Omega - 1);
}

std::vector<double> build_weights(const KernelDescriptor& kernel, double alpha, std::int64_t omega,
                                  std::int64_t Omega) {
  require(alpha > 0.0 && alpha <= 2.0, "alpha must lie in (0, 2]");
  std::vector<double> w = detail::weight_grid(kernel, omega, Omega);
  const double factor = std::pow(static_cast<double>(omega), -1.0 / alpha);
  for (double& v : w) v *= factor;
  return w;
}

namespace detail {

std::vector<double> weight_grid(const KernelDescriptor& kernel, std::int64_t omega,
                                std::int64_t Omega) {
  require(omega >= 1 && Omega >= 1, "omega and Omega must be >= 1");
  const std::int64_t half = omega * Omega;
  std::vector<double> g(static_cast<std::size_t>(2 * half));
  const auto w = static_cast<double>(omega);
  for (std::int64_t j = 1; j <= 2 * half; ++j) {
    const std::int64_t numerator = (j <= half ? j - 1 : j) - half;
    const double v = kernel.eval(static_cast<double>(numerator) / w);
    require(std::isfinite(v), kernel.label + ": kernel is not finite on the synthesis grid");
    g[static_cast<std::size_t>(j - 1)] = v;
  }
  return g;
}

std::vector<double> synthesize_range(const KernelDescriptor& kernel, double alpha,
                                     const SynthesisConfig& config, std::int64_t k_first,
                                     std::int64_t k_last, LineWorkspace& ws, NoiseTrace* trace) {
  require(k_first >= 1 && k_last >= k_first && k_last <= config.n_points, "bad synthesis range");
  const std::int64_t L = config.weight_count();
  const std::int64_t count = k_last - k_first + 1;
  const std::int64_t zlen = config.omega * (count - 1) + L;
  // Every output used sits at index >= L - 1 of the circular convolution, so
  // a transform as long as the noise block is already free of wrap-around.
  const std::size_t P = next_pow2(static_cast<std::size_t>(zlen));

  if (ws.g_grid.empty()) ws.g_grid = weight_grid(kernel, config.omega, config.Omega);
  auto& fft = ws.ffts[P];
  if (!fft) fft = std::make_unique<RealFft>(P);
  auto& spec_g = ws.g_spectra[P];
  if (spec_g.empty()) fft->forward(ws.g_grid, spec_g);

  const std::int64_t first_atom = config.omega * (k_first - 1);
  std::vector<PreparedAtom> local;
  std::span<const PreparedAtom> atoms;
  if (first_atom >= ws.atoms_first &&
      first_atom + zlen <= ws.atoms_first + static_cast<std::int64_t>(ws.atoms.size())) {
    atoms = std::span<const PreparedAtom>(ws.atoms).subspan(
        static_cast<std::size_t>(first_atom - ws.atoms_first), static_cast<std::size_t>(zlen));
  } else {
    local = prepare_atoms(config.seed, first_atom, zlen);
    atoms = local;
  }
  if (trace) trace->uses.push_back({config.seed, first_atom, zlen, alpha});

  std::vector<double> z(static_cast<std::size_t>(zlen));
  transform_atoms(atoms, StableParams{alpha, 1.0}, z);

  std::vector<std::complex<double>> spec;
  fft->forward(z, spec);
  z.clear();
  z.shrink_to_fit();
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= spec_g[i];
  std::vector<double> conv;
  fft->inverse(spec, conv);

  const double factor =
      std::pow(static_cast<double>(config.omega), -1.0 / alpha) / static_cast<double>(P);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k)
    out[static_cast<std::size_t>(k)] =
        conv[static_cast<std::size_t>(config.omega * k + L - 1)] * factor;
  return out;
}

}  // namespace detail

Path synthesize_fft(const KernelDescriptor& kernel, double alpha, const SynthesisConfig& config,
                    NoiseTrace* trace) {
  config.validate();
  StableParams{alpha, config.scale}.validate();
  const std::size_t need = synthesis_memory_estimate(config);
  require(need <= kSynthesisMemoryBudget,
          "synthesis would need about " + std::to_string(need >> 20) + " MiB, over the " +
              std::to_string(kSynthesisMemoryBudget >> 20) + " MiB budget");
  detail::LineWorkspace ws;
  Path path;
  path.values = detail::synthesize_range(kernel, alpha, config, 1, config.n_points, ws, trace);
  for (double& v : path.values) v *= config.scale;
  describe_kernel(kernel, path.meta);
  describe_config(config, path.meta);
  path.meta["alpha"] = format_number(alpha);
  path.meta["method"] = "fft";
  return path;
}

Path synthesize_direct(const KernelDescriptor& kernel, double alpha, const SynthesisConfig& config,
                       NoiseTrace* trace) {
  config.validate();
  StableParams{alpha, config.scale}.validate();
  const std::vector<double> a = build_weights(kernel, alpha, config.omega, config.Omega);
  const std::int64_t L = config.weight_count();
  const std::vector<double> z =
      sas_stream(config.seed, 0, config.noise_count(), StableParams{alpha, 1.0});
  if (trace) trace->uses.push_back({config.seed, 0, config.noise_count(), alpha});

  Path path;
  path.values.resize(static_cast<std::size_t>(config.n_points));
  for (std::int64_t k = 1; k <= config.n_points; ++k) {
    const std::int64_t n = config.omega * (k + config.Omega);
    double sum = 0.0;
    for (std::int64_t j = 1; j <= L; ++j)
      sum += a[static_cast<std::size_t>(j - 1)] *
             z[static_cast<std::size_t>(atom_index(config, n - j))];
    path.values[static_cast<std::size_t>(k - 1)] = sum * config.scale;
  }
  describe_kernel(kernel, path.meta);
  describe_config(config, path.meta);
  path.meta["alpha"] = format_number(alpha);
  path.meta["method"] = "direct";
  return path;
}

Path integrate_path(const Path& path) {
  Path out = path;
  double sum = 0.0;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    sum += path.values[i] * path.dt;
    out.values[i] = sum;
  }
  out.meta["integrated"] = "true";
  return out;
}

}  // namespace stabma
