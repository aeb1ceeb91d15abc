#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "gpe/grid.hpp"

namespace gpe {

using Complex = std::complex<double>;

/// Complex amplitude field psi(z_i) sampled on a Grid. Physical states carry
/// unit L2 norm; the type itself does not force it so that intermediate or
/// scaled fields can be represented (see normalized()).
class Wavefunction {
 public:
  Wavefunction(GridPtr grid, std::vector<Complex> amplitudes);

  /// Samples f at every node.
  static Wavefunction from_function(GridPtr grid, const std::function<Complex(double)>& f);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }

  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  std::span<Complex> amplitudes() noexcept { return amplitudes_; }
  std::size_t size() const noexcept { return amplitudes_.size(); }

  Complex operator[](std::size_t i) const { return amplitudes_[i]; }
  Complex& operator[](std::size_t i) { return amplitudes_[i]; }

  /// Rescales in place to unit norm. Throws InvalidArgument on a zero field.
  void normalize();
  Wavefunction normalized() const;

  /// Multiplies by exp(i*phase) so that the amplitude at the node z = 0 is
  /// real and non-negative.
  void fix_global_phase();

  bool same_grid(const Wavefunction& other) const noexcept;

 private:
  GridPtr grid_;
  std::vector<Complex> amplitudes_;
};

/// Real scalar field (in units of hbar*omega_z) on a Grid. All values finite.
class PotentialField {
 public:
  PotentialField(GridPtr grid, std::vector<double> values);

  static PotentialField zero(GridPtr grid);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  PotentialField& operator+=(const PotentialField& other);
  PotentialField& operator+=(double offset);
  friend PotentialField operator+(PotentialField a, const PotentialField& b) { return a += b; }
  friend PotentialField operator+(PotentialField a, double c) { return a += c; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// <a|b> = sum_i conj(a_i) b_i dz (rectangle rule on the periodic grid).
Complex inner_product(const Wavefunction& a, const Wavefunction& b);

/// sqrt(sum_i |psi_i|^2 dz).
double quadrature_norm(const Wavefunction& psi);

/// sum_i z_i |psi_i|^2 dz.
double expectation_position(const Wavefunction& psi);

/// L2 distance ||a - b|| with the grid quadrature.
double l2_distance(const Wavefunction& a, const Wavefunction& b);

}  // namespace gpe
