#include "gpe/physics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "gpe/error.hpp"
#include "gpe/fft.hpp"

namespace gpe {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument(std::string(name) + " must be positive, got " + std::to_string(value));
  }
}

// Adaptive Simpson on [a, b]; f smooth.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

PhysicalParams PhysicalParams::rubidium87_reference() {
  PhysicalParams p;
  p.scattering_length = 5.7e-9;
  p.omega_z = kTwoPi * 24.7;
  p.omega_perp = kTwoPi * 293.0;
  p.atom_mass = 86.909180527 * kAtomicMassUnit;
  return p;
}

double oscillator_length(const PhysicalParams& p) {
  require_positive(p.omega_z, "omega_z");
  require_positive(p.atom_mass, "atom_mass");
  return std::sqrt(kHbar / (p.atom_mass * p.omega_z));
}

double dimensionless_coupling(const PhysicalParams& p) {
  require_positive(p.omega_perp, "omega_perp");
  if (!(p.scattering_length >= 0.0) || !std::isfinite(p.scattering_length)) {
    throw InvalidArgument("scattering_length must be non-negative");
  }
  return 2.0 * p.scattering_length * (p.omega_perp / p.omega_z) / oscillator_length(p);
}

bool is_quasi_one_dimensional(const PhysicalParams& p) { return p.omega_perp > 5.0 * p.omega_z; }

PotentialField trap_potential(const GridPtr& grid, const TrapSpec& trap) {
  if (!(trap.quartic_K >= 0.0)) throw InvalidArgument("quartic_K must be non-negative");
  std::vector<double> v(grid->points());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = grid->node(i) - trap.center;
    const double x2 = x * x;
    v[i] = 0.5 * (x2 + trap.quartic_K * x2 * x2);
  }
  return PotentialField(grid, std::move(v));
}

std::vector<double> speckle_phases(const SpeckleSpec& spec) {
  std::mt19937_64 engine(spec.seed);
  std::vector<double> phases(static_cast<std::size_t>(std::max(spec.mode_count(), 0)));
  for (double& alpha : phases) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    alpha = kTwoPi * u;
  }
  return phases;
}

int max_speckle_mode(double box_length) {
  return static_cast<int>(std::floor(box_length / kMinSpeckleWavelength + 1e-12));
}

PotentialField speckle_potential(const GridPtr& grid, double epsilon, int n_min, int n_max,
                                 std::span<const double> phases) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("epsilon must be non-negative");
  if (n_min < 1 || n_max < n_min) {
    throw InvalidArgument("speckle modes need 1 <= n_min <= n_max, got " + std::to_string(n_min) + ".." +
                          std::to_string(n_max));
  }
  if (n_max > max_speckle_mode(grid->length())) {
    throw InvalidArgument("speckle mode n_max=" + std::to_string(n_max) + " gives wavelength " +
                          std::to_string(grid->length() / n_max) + " below the minimum of 2 L_ho");
  }
  if (phases.size() != static_cast<std::size_t>(n_max - n_min + 1)) {
    throw InvalidArgument("speckle needs one phase per mode");
  }
  std::vector<double> v(grid->points(), 0.0);
  if (epsilon == 0.0) return PotentialField(grid, std::move(v));
  for (int j = n_min; j <= n_max; ++j) {
    const double k = kTwoPi * j / grid->length();
    const double alpha = phases[static_cast<std::size_t>(j - n_min)];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += std::cos(k * grid->node(i) + alpha);
  }
  for (double& x : v) x *= epsilon;
  return PotentialField(grid, std::move(v));
}

PotentialField speckle_potential(const GridPtr& grid, const SpeckleSpec& spec) {
  if (spec.n_min < 1 || spec.n_max < spec.n_min) {
    throw InvalidArgument("speckle modes need 1 <= n_min <= n_max");
  }
  const auto phases = speckle_phases(spec);
  return speckle_potential(grid, spec.epsilon, spec.n_min, spec.n_max, phases);
}

double classical_period(const TrapSpec& trap, double amplitude) {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw InvalidArgument("oscillation amplitude must be positive");
  }
  if (!(trap.quartic_K >= 0.0)) throw InvalidArgument("quartic_K must be non-negative");
  // With z = A sin(theta), V(A) - V(z) = (A^2 cos^2 theta / 2)(1 + K A^2 (1 + sin^2 theta)),
  // so the quarter-period integrand loses its endpoint singularity.
  const double ka2 = trap.quartic_K * amplitude * amplitude;
  const auto integrand = [ka2](double theta) {
    const double s = std::sin(theta);
    return 1.0 / std::sqrt(1.0 + ka2 * (1.0 + s * s));
  };
  const double a = 0.0;
  const double b = 0.5 * std::numbers::pi;
  const double fa = integrand(a);
  const double fm = integrand(0.5 * (a + b));
  const double fb = integrand(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return 4.0 * adaptive_simpson(integrand, a, b, fa, fm, fb, whole, 1e-13, 40);
}

EnergyParts gpe_energy_parts(const Wavefunction& psi, const PotentialField& potential, double g_eff) {
  if (!(psi.grid() == potential.grid())) throw GridMismatch();
  const Grid& grid = psi.grid();
  const double dz = grid.spacing();
  const auto amp = psi.amplitudes();

  Fft fft(grid.points());
  std::copy(amp.begin(), amp.end(), fft.buffer().begin());
  fft.forward();
  // Parseval: sum_i |f_i|^2 dz = (dz / n) sum_k |F_k|^2.
  double kinetic = 0.0;
  const auto spectrum = fft.buffer();
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const double k = grid.wavenumber(i);
    kinetic += k * k * std::norm(spectrum[i]);
  }
  kinetic *= 0.5 * dz / static_cast<double>(grid.points());

  double pot = 0.0;
  double inter = 0.0;
  const auto v = potential.values();
  for (std::size_t i = 0; i < amp.size(); ++i) {
    const double rho = std::norm(amp[i]);
    pot += v[i] * rho;
    inter += rho * rho;
  }
  return {kinetic, pot * dz, 0.5 * g_eff * inter * dz};
}

double gpe_energy(const Wavefunction& psi, const PotentialField& potential, double g_eff) {
  return gpe_energy_parts(psi, potential, g_eff).total();
}

}  // namespace gpe
