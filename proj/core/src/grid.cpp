#include "gpe/grid.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "gpe/error.hpp"

namespace gpe {

Grid::Grid(double length, std::size_t points) : length_(length), points_(points) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidArgument("grid length must be positive and finite, got " + std::to_string(length));
  }
  if (points < 16 || !std::has_single_bit(points)) {
    throw InvalidArgument("grid points must be a power of two >= 16, got " + std::to_string(points));
  }
  spacing_ = length / static_cast<double>(points);
  nodes_.resize(points);
  wavenumbers_.resize(points);
  const double dk = wavenumber_spacing();
  const auto n = static_cast<std::ptrdiff_t>(points);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    nodes_[i] = -0.5 * length + static_cast<double>(i) * spacing_;
    const std::ptrdiff_t m = i < n / 2 ? i : i - n;
    wavenumbers_[i] = dk * static_cast<double>(m);
  }
}

double Grid::wavenumber_spacing() const noexcept { return 2.0 * std::numbers::pi / length_; }

GridPtr make_grid(double length, std::size_t points) {
  return std::make_shared<const Grid>(length, points);
}

}  // namespace gpe
