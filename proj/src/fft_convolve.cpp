#include "stabma/fft_convolve.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <mutex>

#include <fftw3.h>

#include "stabma/errors.hpp"

namespace stabma {
namespace {

// The FFTW planner is not thread safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct RealFft::Plans {
  double* real = nullptr;
  fftw_complex* spectrum = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  ~Plans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
    fftw_free(real);
    fftw_free(spectrum);
  }
};

RealFft::RealFft(std::size_t size) : size_(size), plans_(std::make_unique<Plans>()) {
  require(size >= 1, "RealFft: size must be >= 1");
  require(size <= static_cast<std::size_t>(std::numeric_limits<int>::max()),
          "RealFft: size exceeds the FFT backend limit");
  plans_->real = fftw_alloc_real(size_);
  plans_->spectrum = fftw_alloc_complex(spectrum_size());
  if (!plans_->real || !plans_->spectrum) throw std::bad_alloc();
  const int n = static_cast<int>(size_);
  std::lock_guard<std::mutex> lock(planner_mutex());
  plans_->r2c = fftw_plan_dft_r2c_1d(n, plans_->real, plans_->spectrum, FFTW_ESTIMATE);
  plans_->c2r = fftw_plan_dft_c2r_1d(n, plans_->spectrum, plans_->real, FFTW_ESTIMATE);
}

RealFft::~RealFft() = default;

void RealFft::forward(std::span<const double> in, std::vector<std::complex<double>>& out) {
  require(in.size() <= size_, "RealFft::forward: input longer than transform");
  std::copy(in.begin(), in.end(), plans_->real);
  std::fill(plans_->real + in.size(), plans_->real + size_, 0.0);
  fftw_execute(plans_->r2c);
  out.resize(spectrum_size());
  std::memcpy(static_cast<void*>(out.data()), plans_->spectrum,
              spectrum_size() * sizeof(fftw_complex));
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::vector<double>& out) {
  require(in.size() == spectrum_size(), "RealFft::inverse: spectrum size mismatch");
  std::memcpy(plans_->spectrum, static_cast<const void*>(in.data()),
              spectrum_size() * sizeof(fftw_complex));
  fftw_execute(plans_->c2r);
  out.assign(plans_->real, plans_->real + size_);
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> convolve_fft(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t len = a.size() + b.size() - 1;
  RealFft fft(next_pow2(len));
  std::vector<std::complex<double>> fa;
  std::vector<std::complex<double>> fb;
  fft.forward(a, fa);
  fft.forward(b, fb);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  std::vector<double> out;
  fft.inverse(fa, out);
  out.resize(len);
  const double norm = 1.0 / static_cast<double>(fft.size());
  for (double& v : out) v *= norm;
  return out;
}

std::vector<double> convolve_direct(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace stabma
