#include "gpe/wavefunction.hpp"

#include <cmath>
#include <string>

#include "gpe/error.hpp"

namespace gpe {

Wavefunction::Wavefunction(GridPtr grid, std::vector<Complex> amplitudes)
    : grid_(std::move(grid)), amplitudes_(std::move(amplitudes)) {
  if (!grid_) throw InvalidArgument("wavefunction needs a grid");
  if (amplitudes_.size() != grid_->points()) {
    throw InvalidArgument("wavefunction has " + std::to_string(amplitudes_.size()) +
                          " amplitudes for a grid of " + std::to_string(grid_->points()));
  }
}

Wavefunction Wavefunction::from_function(GridPtr grid, const std::function<Complex(double)>& f) {
  std::vector<Complex> values(grid->points());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = f(grid->node(i));
  return Wavefunction(std::move(grid), std::move(values));
}

void Wavefunction::normalize() {
  const double norm = quadrature_norm(*this);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidArgument("cannot normalize a field with norm " + std::to_string(norm));
  }
  const double scale = 1.0 / norm;
  for (auto& a : amplitudes_) a *= scale;
}

Wavefunction Wavefunction::normalized() const {
  Wavefunction copy = *this;
  copy.normalize();
  return copy;
}

void Wavefunction::fix_global_phase() {
  const Complex c = amplitudes_[grid_->center_index()];
  const double mag = std::abs(c);
  if (mag == 0.0) return;
  const Complex rotation = std::conj(c) / mag;
  for (auto& a : amplitudes_) a *= rotation;
  amplitudes_[grid_->center_index()] = Complex(mag, 0.0);
}

bool Wavefunction::same_grid(const Wavefunction& other) const noexcept {
  return grid_ == other.grid_ || *grid_ == *other.grid_;
}

PotentialField::PotentialField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw InvalidArgument("potential needs a grid");
  if (values_.size() != grid_->points()) {
    throw InvalidArgument("potential has " + std::to_string(values_.size()) +
                          " values for a grid of " + std::to_string(grid_->points()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("potential contains non-finite values");
  }
}

PotentialField PotentialField::zero(GridPtr grid) {
  const auto n = grid->points();
  return PotentialField(std::move(grid), std::vector<double>(n, 0.0));
}

PotentialField& PotentialField::operator+=(const PotentialField& other) {
  if (!(grid_ == other.grid_ || *grid_ == *other.grid_)) throw GridMismatch();
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

PotentialField& PotentialField::operator+=(double offset) {
  for (double& v : values_) v += offset;
  return *this;
}

Complex inner_product(const Wavefunction& a, const Wavefunction& b) {
  if (!a.same_grid(b)) throw GridMismatch();
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::conj(x[i]) * y[i];
  return sum * a.grid().spacing();
}

double quadrature_norm(const Wavefunction& psi) {
  double sum = 0.0;
  for (const auto& a : psi.amplitudes()) sum += std::norm(a);
  return std::sqrt(sum * psi.grid().spacing());
}

double expectation_position(const Wavefunction& psi) {
  const auto z = psi.grid().nodes();
  const auto amp = psi.amplitudes();
  double sum = 0.0;
  for (std::size_t i = 0; i < amp.size(); ++i) sum += z[i] * std::norm(amp[i]);
  return sum * psi.grid().spacing();
}

double l2_distance(const Wavefunction& a, const Wavefunction& b) {
  if (!a.same_grid(b)) throw GridMismatch();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::norm(a[i] - b[i]);
  return std::sqrt(sum * a.grid().spacing());
}

}  // namespace gpe
