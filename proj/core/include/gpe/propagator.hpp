#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gpe/fft.hpp"
#include "gpe/wavefunction.hpp"

namespace gpe {

/// Real-time integration settings. Times in units of 1/omega_z.
struct EvolveParams {
  double dt = 1e-3;
  double t_max = 60.0;
  double sample_interval = 0.1;
  double g_eff = 0.0;  // coupling * atom number

  /// Validates the invariants and returns the number of steps per sample.
  std::size_t steps_per_sample() const;
  /// Number of samples after t = 0, i.e. floor(t_max / sample_interval).
  std::size_t sample_count() const;
};

struct GroundStateParams {
  double dt_imag = 1e-3;
  double energy_tol = 1e-12;
  std::size_t max_steps = 1'000'000;
};

/// Second-order Strang split-step integrator for
///   i dpsi/dt = -psi''/2 + V psi + g_eff |psi|^2 psi
/// on a periodic grid. The potential+nonlinear substep is a pure phase and
/// leaves |psi| unchanged, so the trailing half-kick of one step and the
/// leading half-kick of the next are fused into one full kick inside
/// advance(); this is exact, not an approximation.
///
/// Owns its state and transform workspace; one instance per trajectory.
class SplitStepPropagator {
 public:
  SplitStepPropagator(const Wavefunction& initial, const PotentialField& potential, double g_eff, double dt);

  /// Takes `steps` full Strang steps. Throws SolverError if the state
  /// becomes non-finite.
  void advance(std::size_t steps);

  std::span<const Complex> amplitudes() const noexcept { return fft_.buffer(); }
  Wavefunction state() const;
  const GridPtr& grid_ptr() const noexcept { return grid_; }

  double dt() const noexcept { return dt_; }
  double g_eff() const noexcept { return g_eff_; }
  std::size_t steps_taken() const noexcept { return steps_taken_; }
  double time() const noexcept { return static_cast<double>(steps_taken_) * dt_; }

 private:
  void kick(bool half) noexcept;
  void drift() noexcept;

  GridPtr grid_;
  double g_eff_;
  double dt_;
  std::vector<Complex> drift_phase_;
  std::vector<Complex> kick_full_;  // exp(-i V dt)
  std::vector<Complex> kick_half_;  // exp(-i V dt / 2)
  std::vector<double> phase_;
  Fft fft_;
  std::size_t steps_taken_ = 0;
};

/// One Strang step of length dt. Norm preserved to roundoff.
Wavefunction step_realtime(const Wavefunction& psi, const PotentialField& potential, double g_eff, double dt);

using Observer = std::function<void(double t, const Wavefunction& psi)>;

struct Trajectory {
  std::vector<double> times;
  std::vector<double> position;  // <z>
  std::vector<double> energy;    // GPE energy functional
  std::vector<double> norm;
  Wavefunction final_state;
};

/// Integrates to params.t_max, recording observables and invoking each
/// observer at t = k * sample_interval for k = 1 .. sample_count().
Trajectory evolve(const Wavefunction& initial, const PotentialField& potential, const EvolveParams& params,
                  std::span<const Observer> observers = {});

struct GroundState {
  Wavefunction psi;
  double energy = 0.0;
  std::size_t steps = 0;
  std::vector<double> energy_history;  // energy after every imaginary-time step
};

/// Imaginary-time Strang relaxation with renormalisation after every step.
/// Stops when the relative energy change per step drops below energy_tol;
/// throws SolverError if max_steps is reached first. The result's global
/// phase makes psi(0) real and non-negative.
GroundState ground_state(const GridPtr& grid, const PotentialField& potential, double g_eff,
                         const GroundStateParams& params);
GroundState ground_state(const Wavefunction& initial_guess, const PotentialField& potential, double g_eff,
                         const GroundStateParams& params);

/// Thomas-Fermi density max(0, (mu - V)/g_eff) with mu fixed by unit
/// normalisation; returns mu. Requires g_eff > 0.
double thomas_fermi_chemical_potential(const PotentialField& potential, double g_eff);
Wavefunction thomas_fermi_state(const PotentialField& potential, double g_eff);

/// Half-width of the region around the density peak where the density stays
/// above `fraction` of the peak value, in L_ho (mean of the left/right extents).
double condensate_half_length(const Wavefunction& psi, double fraction = 1e-4);

}  // namespace gpe
