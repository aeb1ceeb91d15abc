#include "gpe/echo.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "gpe/error.hpp"

namespace gpe {
namespace {

Complex overlap(std::span<const Complex> a, std::span<const Complex> b) {
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

double modulus_overlap(std::span<const Complex> a, std::span<const Complex> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i]) * std::abs(b[i]);
  return sum;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

}  // namespace

double EchoConfig::effective_coupling() const {
  return physical ? dimensionless_coupling(*physical) : coupling;
}

EvolveParams EchoConfig::evolve_params() const {
  return EvolveParams{.dt = dt, .t_max = t_max, .sample_interval = sample_interval, .g_eff = g_eff()};
}

void EchoConfig::validate() const {
  if (n_realizations < 2) throw InvalidArgument("an echo needs at least 2 realizations");
  if (!(displacement >= 0.0) || !std::isfinite(displacement)) {
    throw InvalidArgument("displacement must be non-negative");
  }
  if (!(trap.quartic_K >= 0.0)) throw InvalidArgument("quartic_K must be non-negative");
  if (!(coupling >= 0.0)) throw InvalidArgument("coupling must be non-negative");
  if (!(n_atoms >= 0.0)) throw InvalidArgument("n_atoms must be non-negative");
  if (!(speckle.epsilon >= 0.0)) throw InvalidArgument("epsilon must be non-negative");
  if (speckle.n_min < 1 || speckle.n_max < speckle.n_min) {
    throw InvalidArgument("speckle modes need 1 <= n_min <= n_max");
  }
  if (speckle.n_max > max_speckle_mode(grid_length)) {
    throw InvalidArgument("speckle n_max=" + std::to_string(speckle.n_max) +
                          " violates the 2 L_ho minimum wavelength on a box of " + std::to_string(grid_length));
  }
  Grid probe(grid_length, grid_points);
  (void)evolve_params().steps_per_sample();
  if (!(ground.dt_imag > 0.0) || !(ground.energy_tol > 0.0)) {
    throw InvalidArgument("ground-state dt_imag and energy_tol must be positive");
  }
  if (physical) (void)dimensionless_coupling(*physical);
}

std::uint64_t realization_seed(std::uint64_t master_seed, std::size_t j) {
  return splitmix64(master_seed + (static_cast<std::uint64_t>(j) + 1) * 0x9E3779B97F4A7C15ULL);
}

std::vector<std::pair<std::size_t, std::size_t>> realization_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

double fidelity(const Wavefunction& a, const Wavefunction& b) { return std::norm(inner_product(a, b)); }

double amplitude_fidelity(const Wavefunction& a, const Wavefunction& b) {
  if (!a.same_grid(b)) throw GridMismatch();
  const double s = modulus_overlap(a.amplitudes(), b.amplitudes()) * a.grid().spacing();
  return s * s;
}

GroundState echo_ground_state(const EchoConfig& config) {
  config.validate();
  const auto grid = make_grid(config.grid_length, config.grid_points);
  const TrapSpec clean{.quartic_K = config.trap.quartic_K, .center = config.trap.center};
  return ground_state(grid, trap_potential(grid, clean), config.g_eff(), config.ground);
}

EchoCurve run_echo(const EchoConfig& config, const EchoOptions& options) {
  config.validate();
  const EvolveParams evolve = config.evolve_params();
  const std::size_t per_sample = evolve.steps_per_sample();
  const std::size_t samples = evolve.sample_count();
  const std::size_t n = config.n_realizations;
  const auto pairs = realization_pairs(n);
  const std::size_t m = pairs.size();

  const GroundState ground = options.ground ? *options.ground : echo_ground_state(config);
  const GridPtr grid = ground.psi.grid_ptr();
  if (!(*grid == Grid(config.grid_length, config.grid_points))) throw GridMismatch();

  TrapSpec shifted = config.trap;
  shifted.center += config.displacement;
  const PotentialField trap = trap_potential(grid, shifted);

  EchoCurve curve;
  curve.n_realizations = n;
  curve.n_pairs = m;
  curve.g_eff = evolve.g_eff;
  curve.ground_state_energy = ground.energy;
  curve.times.reserve(samples + 1);
  curve.fidelity.reserve(samples + 1);
  curve.amplitude_fidelity.reserve(samples + 1);
  if (options.keep_per_pair) curve.per_pair.reserve((samples + 1) * m);

  std::vector<SplitStepPropagator> props;
  props.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    SpeckleSpec spec = config.speckle;
    spec.seed = realization_seed(config.master_seed, j);
    curve.seeds.push_back(spec.seed);
    props.emplace_back(ground.psi, trap + speckle_potential(grid, spec), evolve.g_eff, evolve.dt);
  }

  const double dz = grid->spacing();
  const auto reduce = [&](std::size_t k) {
    double f_sum = 0.0;
    double fa_sum = 0.0;
    for (const auto& [i, j] : pairs) {
      const auto a = props[i].amplitudes();
      const auto b = props[j].amplitudes();
      const double f = std::norm(overlap(a, b) * dz);
      const double s = modulus_overlap(a, b) * dz;
      f_sum += f;
      fa_sum += s * s;
      if (options.keep_per_pair) curve.per_pair.push_back(f);
    }
    curve.times.push_back(static_cast<double>(k) * evolve.sample_interval);
    curve.fidelity.push_back(f_sum / static_cast<double>(m));
    curve.amplitude_fidelity.push_back(fa_sum / static_cast<double>(m));
    if (options.snapshot_sink && options.snapshot_every > 0 && k % options.snapshot_every == 0) {
      for (std::size_t j = 0; j < n; ++j) options.snapshot_sink(j, k, props[j].state());
    }
  };

  reduce(0);
  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, n);
  if (workers == 1) {
    for (std::size_t k = 1; k <= samples; ++k) {
      for (auto& p : props) p.advance(per_sample);
      reduce(k);
    }
    return curve;
  }

  // Lockstep: each worker advances a fixed subset of realizations to the
  // next sample time; the barrier's completion step reduces that sample.
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::atomic<std::size_t> next_sample{1};
  const auto on_completion = [&]() noexcept {
    if (failed.load()) return;
    try {
      reduce(next_sample.fetch_add(1));
    } catch (...) {
      error = std::current_exception();
      failed.store(true);
    }
  };
  std::barrier sync(static_cast<std::ptrdiff_t>(workers), on_completion);
  std::vector<std::exception_ptr> worker_errors(workers);

  const auto work = [&](std::size_t w) {
    for (std::size_t k = 1; k <= samples; ++k) {
      if (!failed.load()) {
        try {
          for (std::size_t j = w; j < n; j += workers) props[j].advance(per_sample);
        } catch (...) {
          worker_errors[w] = std::current_exception();
          failed.store(true);
        }
      }
      sync.arrive_and_wait();
      if (failed.load()) return;
    }
  };
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
  }
  for (const auto& e : worker_errors) {
    if (e) std::rethrow_exception(e);
  }
  if (error) std::rethrow_exception(error);
  return curve;
}

PairwiseStats pairwise_stats(const EchoCurve& curve) {
  if (!curve.has_per_pair()) throw InvalidArgument("curve was recorded without per-pair fidelities");
  PairwiseStats stats;
  stats.stddev_defined = curve.n_pairs > 1;
  const std::size_t samples = curve.size();
  stats.mean.resize(samples);
  stats.stddev.resize(samples);
  stats.min.resize(samples);
  stats.max.resize(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const auto row = curve.pairs_at(k);
    double sum = 0.0;
    for (double f : row) sum += f;
    const double mean = sum / static_cast<double>(row.size());
    double var = 0.0;
    for (double f : row) var += (f - mean) * (f - mean);
    stats.mean[k] = mean;
    stats.stddev[k] = std::sqrt(var / static_cast<double>(row.size()));
    const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
    stats.min[k] = *lo;
    stats.max[k] = *hi;
  }
  return stats;
}

}  // namespace gpe
