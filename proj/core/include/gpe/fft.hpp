#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gpe {

/// In-place 1D complex DFT of fixed size backed by FFTW, with an owned,
/// SIMD-aligned work buffer. Plans are created with FFTW_ESTIMATE so the
/// chosen algorithm, and therefore every output bit, is reproducible across
/// runs. Planning is serialized internally; execution is thread-safe as long
/// as each thread uses its own Fft instance.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
  Fft(Fft&& other) noexcept;
  Fft& operator=(Fft&& other) noexcept;

  std::size_t size() const noexcept { return n_; }
  std::span<std::complex<double>> buffer() noexcept { return {data_, n_}; }
  std::span<const std::complex<double>> buffer() const noexcept { return {data_, n_}; }

  /// buffer <- sum_j buffer_j exp(-2 pi i jk/n)
  void forward() noexcept;
  /// buffer <- (1/n) sum_k buffer_k exp(+2 pi i jk/n); exact inverse of forward().
  void backward() noexcept;

 private:
  void release() noexcept;

  std::size_t n_ = 0;
  std::complex<double>* data_ = nullptr;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

/// Out-of-place convenience wrappers (allocate a plan per call).
std::vector<std::complex<double>> dft_forward(std::span<const std::complex<double>> x);
std::vector<std::complex<double>> dft_backward(std::span<const std::complex<double>> x);

}  // namespace gpe
