#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gpe/grid.hpp"
#include "gpe/wavefunction.hpp"

namespace gpe {

/// Anharmonic trap V(z) = (1/2)((z - c)^2 + K (z - c)^4) in units of hbar*omega_z.
struct TrapSpec {
  double quartic_K = 0.05;
  double center = 0.0;
};

/// Random cosine-sum perturbation eps * sum_{j=n_min}^{n_max} cos(2 pi z / lambda_j + alpha_j)
/// with lambda_j = box length / j and phases alpha_j drawn from `seed`.
struct SpeckleSpec {
  double epsilon = 1e-5;
  int n_min = 1;
  int n_max = 20;
  std::uint64_t seed = 0;

  int mode_count() const noexcept { return n_max - n_min + 1; }
};

/// Dimensional inputs of the 1D reduction, SI units (angular frequencies in rad/s).
/// The atom number is carried separately by the experiment configuration.
struct PhysicalParams {
  double scattering_length = 5.7e-9;
  double omega_z = 0.0;
  double omega_perp = 0.0;
  double atom_mass = 0.0;

  /// 87Rb in a 24.7 Hz x 293 Hz cigar trap.
  static PhysicalParams rubidium87_reference();
};

inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg

/// Harmonic-oscillator length sqrt(hbar / (m omega_z)) in metres.
double oscillator_length(const PhysicalParams& p);

/// g_1D / (L_ho hbar omega_z) = 2 a (omega_perp / omega_z) / L_ho.
/// Throws InvalidArgument on non-positive frequencies/mass or negative a.
double dimensionless_coupling(const PhysicalParams& p);

/// True when omega_perp / omega_z exceeds 5, the threshold below which the
/// 1D reduction is flagged as questionable.
bool is_quasi_one_dimensional(const PhysicalParams& p);

PotentialField trap_potential(const GridPtr& grid, const TrapSpec& trap);

/// Phases alpha_{n_min..n_max}, uniform on [0, 2 pi), drawn from a
/// mt19937_64 seeded with spec.seed. The mapping from raw engine output to
/// doubles is fixed here (53-bit mantissa) so it does not depend on the
/// standard library's distribution implementation.
std::vector<double> speckle_phases(const SpeckleSpec& spec);

/// Cosine-sum perturbation with caller-supplied phases (one per mode).
PotentialField speckle_potential(const GridPtr& grid, double epsilon, int n_min, int n_max,
                                 std::span<const double> phases);

/// Cosine-sum perturbation with seeded random phases. Throws InvalidArgument
/// if the shortest wavelength length/n_max is below 2 L_ho.
PotentialField speckle_potential(const GridPtr& grid, const SpeckleSpec& spec);

/// Shortest wavelength the cosine-sum model admits, in L_ho.
inline constexpr double kMinSpeckleWavelength = 2.0;

/// Largest n_max satisfying the wavelength bound on a box of this length.
int max_speckle_mode(double box_length);

/// Period (in 1/omega_z) of a classical particle released at rest from
/// distance `amplitude` from the trap centre.
double classical_period(const TrapSpec& trap, double amplitude);

struct EnergyParts {
  double kinetic = 0.0;
  double potential = 0.0;
  double interaction = 0.0;

  double total() const noexcept { return kinetic + potential + interaction; }
  /// Chemical potential of a stationary state, mu = E_kin + E_pot + 2 E_int.
  double chemical_potential() const noexcept { return kinetic + potential + 2.0 * interaction; }
};

/// Energy functional int [ |psi'|^2/2 + V |psi|^2 + g_eff |psi|^4 / 2 ] dz, with
/// the derivative taken spectrally.
EnergyParts gpe_energy_parts(const Wavefunction& psi, const PotentialField& potential, double g_eff);
double gpe_energy(const Wavefunction& psi, const PotentialField& potential, double g_eff);

}  // namespace gpe
