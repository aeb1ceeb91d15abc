#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gpe/physics.hpp"
#include "gpe/propagator.hpp"
#include "gpe/wavefunction.hpp"

namespace gpe {

/// Everything that defines one fidelity experiment. Defaults reproduce the
/// reference benchmark: 87Rb, 1e5 atoms, K = 0.05, displacement 3 L_ho,
/// eps = 1e-5, 11 realizations.
///
/// The default box and resolution are set by the displaced dynamics, not by
/// the ground state: after the shift the condensate sloshes out to |z| ~ 23
/// with wavenumbers up to ~120, so the box must exceed 46 L_ho and the
/// Nyquist wavenumber pi/dz must exceed ~100. The time step keeps
/// k_max^2 dt / 2 below pi, beyond which split-step integration of the
/// cubic equation goes unstable.
struct EchoConfig {
  double grid_length = 60.0;
  std::size_t grid_points = 2048;

  TrapSpec trap{};
  double displacement = 3.0;
  /// Seed is ignored; realizations derive their own. n_max = 30 is the
  /// shortest wavelength (2 L_ho) that fits the default box.
  SpeckleSpec speckle{.epsilon = 1e-5, .n_min = 1, .n_max = 30, .seed = 0};
  std::size_t n_realizations = 11;
  std::uint64_t master_seed = 20070917;

  double dt = 1e-4;
  double t_max = 60.0;
  double sample_interval = 0.1;

  double coupling = 0.063;  // dimensionless g_1D; replaced by `physical` when set
  double n_atoms = 1e5;
  std::optional<PhysicalParams> physical;

  GroundStateParams ground{};

  double effective_coupling() const;
  double g_eff() const { return effective_coupling() * n_atoms; }
  EvolveParams evolve_params() const;

  /// Throws InvalidArgument when an invariant is violated.
  void validate() const;
};

/// Seed of realization j: splitmix64 finaliser applied to
/// master + (j + 1) * 0x9E3779B97F4A7C15. Depends only on (master, j).
std::uint64_t realization_seed(std::uint64_t master_seed, std::size_t j);

/// Ensemble-averaged fidelity curve. Samples are taken at t = k * interval,
/// k = 0 .. K, where k = 0 is the shared initial state.
struct EchoCurve {
  std::vector<double> times;
  std::vector<double> fidelity;
  std::vector<double> amplitude_fidelity;
  std::size_t n_realizations = 0;
  std::size_t n_pairs = 0;
  /// Row-major [sample][pair]; pairs ordered (0,1), (0,2), ..., (N-2,N-1).
  /// Empty when not retained.
  std::vector<double> per_pair;

  std::vector<std::uint64_t> seeds;
  double ground_state_energy = 0.0;
  double g_eff = 0.0;

  std::size_t size() const noexcept { return times.size(); }
  bool has_per_pair() const noexcept { return !per_pair.empty(); }
  std::span<const double> pairs_at(std::size_t sample) const {
    return std::span<const double>(per_pair).subspan(sample * n_pairs, n_pairs);
  }
};

/// Unordered pair list in the order used by EchoCurve::per_pair.
std::vector<std::pair<std::size_t, std::size_t>> realization_pairs(std::size_t n);

/// |<a|b>|^2.
double fidelity(const Wavefunction& a, const Wavefunction& b);
/// (sum_i |a_i| |b_i| dz)^2; blind to phases, never below fidelity(a, b).
double amplitude_fidelity(const Wavefunction& a, const Wavefunction& b);

using SnapshotSink = std::function<void(std::size_t realization, std::size_t sample, const Wavefunction& psi)>;

struct EchoOptions {
  std::size_t workers = 1;
  bool keep_per_pair = true;
  /// Reuse a previously relaxed ground state (must match grid, trap and g_eff).
  std::optional<GroundState> ground;
  /// Called from the reducing thread for every realization at samples
  /// k = 0, snapshot_every, 2*snapshot_every, ... when snapshot_every > 0.
  SnapshotSink snapshot_sink;
  std::size_t snapshot_every = 0;
};

/// Ground state of the clean, undisplaced trap for this configuration.
GroundState echo_ground_state(const EchoConfig& config);

/// Runs the protocol: relax in the clean trap, displace the trap centre,
/// evolve each realization under trap + its own speckle and average all
/// pairwise fidelities at every sample time.
///
/// Realizations are advanced in lockstep by up to `workers` threads; every
/// realization's arithmetic is independent of the thread that runs it and
/// the pair reduction happens in fixed order, so the result is bit-identical
/// for any worker count.
EchoCurve run_echo(const EchoConfig& config, const EchoOptions& options = {});

struct PairwiseStats {
  std::vector<double> mean;
  std::vector<double> stddev;  // population std over pairs
  std::vector<double> min;
  std::vector<double> max;
  bool stddev_defined = true;  // false when only one pair exists
};

/// Spread of the partial fidelities. Throws InvalidArgument without per-pair data.
PairwiseStats pairwise_stats(const EchoCurve& curve);

}  // namespace gpe
