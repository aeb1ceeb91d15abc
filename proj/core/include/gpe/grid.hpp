#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace gpe {

/// Uniform periodic 1D grid on [-length/2, length/2) in units of the
/// harmonic-oscillator length, together with its discrete-Fourier conjugate
/// wavenumber lattice.
///
/// Wavenumbers are stored in transform order: k_i = 2*pi*i/length for
/// i < points/2 and 2*pi*(i - points)/length otherwise, so they pair directly
/// with the output of an unshifted DFT.
class Grid {
 public:
  /// Throws InvalidArgument unless length > 0 and points is a power of two >= 16.
  Grid(double length, std::size_t points);

  double length() const noexcept { return length_; }
  std::size_t points() const noexcept { return points_; }
  double spacing() const noexcept { return spacing_; }
  double wavenumber_spacing() const noexcept;

  double node(std::size_t i) const { return nodes_[i]; }
  double wavenumber(std::size_t i) const { return wavenumbers_[i]; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> wavenumbers() const noexcept { return wavenumbers_; }

  /// Index of the node at z = 0.
  std::size_t center_index() const noexcept { return points_ / 2; }

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.length_ == b.length_ && a.points_ == b.points_;
  }

 private:
  double length_;
  std::size_t points_;
  double spacing_;
  std::vector<double> nodes_;
  std::vector<double> wavenumbers_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(double length, std::size_t points);

}  // namespace gpe
