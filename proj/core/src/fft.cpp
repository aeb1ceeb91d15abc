#include "gpe/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <new>
#include <utility>

namespace gpe {
namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  data_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (data_ == nullptr) throw std::bad_alloc();
  std::fill_n(data_, n, std::complex<double>{});
  std::lock_guard lock(planner_mutex());
  const int size = static_cast<int>(n);
  forward_plan_ = fftw_plan_dft_1d(size, as_fftw(data_), as_fftw(data_), FFTW_FORWARD, FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_dft_1d(size, as_fftw(data_), as_fftw(data_), FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() { release(); }

Fft::Fft(Fft&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      data_(std::exchange(other.data_, nullptr)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      backward_plan_(std::exchange(other.backward_plan_, nullptr)) {}

Fft& Fft::operator=(Fft&& other) noexcept {
  if (this != &other) {
    release();
    n_ = std::exchange(other.n_, 0);
    data_ = std::exchange(other.data_, nullptr);
    forward_plan_ = std::exchange(other.forward_plan_, nullptr);
    backward_plan_ = std::exchange(other.backward_plan_, nullptr);
  }
  return *this;
}

void Fft::release() noexcept {
  if (forward_plan_ != nullptr || backward_plan_ != nullptr) {
    std::lock_guard lock(planner_mutex());
    if (forward_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    if (backward_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
  }
  forward_plan_ = backward_plan_ = nullptr;
  if (data_ != nullptr) fftw_free(data_);
  data_ = nullptr;
}

void Fft::forward() noexcept { fftw_execute(static_cast<fftw_plan>(forward_plan_)); }

void Fft::backward() noexcept {
  fftw_execute(static_cast<fftw_plan>(backward_plan_));
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) data_[i] *= scale;
}

std::vector<std::complex<double>> dft_forward(std::span<const std::complex<double>> x) {
  Fft fft(x.size());
  std::copy(x.begin(), x.end(), fft.buffer().begin());
  fft.forward();
  return {fft.buffer().begin(), fft.buffer().end()};
}

std::vector<std::complex<double>> dft_backward(std::span<const std::complex<double>> x) {
  Fft fft(x.size());
  std::copy(x.begin(), x.end(), fft.buffer().begin());
  fft.backward();
  return {fft.buffer().begin(), fft.buffer().end()};
}

}  // namespace gpe
