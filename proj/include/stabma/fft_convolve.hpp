#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace stabma {

/// Real-to-complex FFT of one fixed length, backed by FFTW. Plans are made
/// once per object; transforms on distinct objects may run concurrently.
class RealFft {
 public:
  explicit RealFft(std::size_t size);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return size_; }
  std::size_t spectrum_size() const { return size_ / 2 + 1; }

  /// Zero-pads `in` to size() and returns its spectrum.
  void forward(std::span<const double> in, std::vector<std::complex<double>>& out);
  /// Unnormalised inverse: the result is size() times the input signal.
  void inverse(std::span<const std::complex<double>> in, std::vector<double>& out);

 private:
  struct Plans;
  std::size_t size_;
  std::unique_ptr<Plans> plans_;
};

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

/// Full linear convolution of a and b (length a.size() + b.size() - 1).
std::vector<double> convolve_fft(std::span<const double> a, std::span<const double> b);

/// Same, by the O(n m) double loop.
std::vector<double> convolve_direct(std::span<const double> a, std::span<const double> b);

}  // namespace stabma
