#include "gpe/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gpe/error.hpp"
#include "gpe/physics.hpp"

namespace gpe {
namespace {

// Relative slack when checking that sample_interval is a multiple of dt.
constexpr double kCadenceSlack = 1e-9;

bool all_finite(std::span<const Complex> values) {
  return std::all_of(values.begin(), values.end(),
                     [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

// Energy functional evaluated with a caller-owned transform workspace.
double energy_with(Fft& fft, std::span<const Complex> amp, const Grid& grid, std::span<const double> v,
                   double g_eff) {
  std::copy(amp.begin(), amp.end(), fft.buffer().begin());
  fft.forward();
  double kinetic = 0.0;
  const auto spec = fft.buffer();
  const auto k = grid.wavenumbers();
  for (std::size_t i = 0; i < spec.size(); ++i) kinetic += k[i] * k[i] * std::norm(spec[i]);
  kinetic *= 0.5 / static_cast<double>(grid.points());
  double rest = 0.0;
  for (std::size_t i = 0; i < amp.size(); ++i) {
    const double rho = std::norm(amp[i]);
    rest += (v[i] + 0.5 * g_eff * rho) * rho;
  }
  return (kinetic + rest) * grid.spacing();
}

// Plain complex product; std::complex operator* adds C99 Annex G inf/nan
// recovery that costs a library call per element.
inline Complex mul(Complex a, Complex b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Largest nonlinear phase per kick for which the series below is used; its
// truncation error there is below 1e-19.
constexpr double kSeriesPhaseLimit = 0.125;

// exp(-i x) by truncated Taylor series, |x| <= kSeriesPhaseLimit.
inline Complex series_phase(double x) noexcept {
  const double x2 = x * x;
  const double c =
      1.0 + x2 * (-1.0 / 2 + x2 * (1.0 / 24 + x2 * (-1.0 / 720 + x2 * (1.0 / 40320 + x2 * (-1.0 / 3628800)))));
  const double sn =
      x * (1.0 + x2 * (-1.0 / 6 + x2 * (1.0 / 120 + x2 * (-1.0 / 5040 + x2 * (1.0 / 362880 + x2 * (-1.0 / 39916800))))));
  return {c, -sn};
}

}  // namespace

std::size_t EvolveParams::steps_per_sample() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (!(sample_interval > 0.0)) throw InvalidArgument("sample_interval must be positive");
  if (!(t_max >= sample_interval)) throw InvalidArgument("t_max must be at least sample_interval");
  if (!std::isfinite(g_eff)) throw InvalidArgument("g_eff must be finite");
  const double ratio = sample_interval / dt;
  const double steps = std::round(ratio);
  if (steps < 1.0 || std::abs(ratio - steps) > kCadenceSlack * ratio) {
    throw InvalidArgument("sample_interval must be an integer multiple of dt");
  }
  return static_cast<std::size_t>(steps);
}

std::size_t EvolveParams::sample_count() const {
  steps_per_sample();
  return static_cast<std::size_t>(std::floor(t_max / sample_interval + kCadenceSlack));
}

SplitStepPropagator::SplitStepPropagator(const Wavefunction& initial, const PotentialField& potential,
                                         double g_eff, double dt)
    : grid_(initial.grid_ptr()),
      g_eff_(g_eff),
      dt_(dt),
      fft_(initial.grid().points()) {
  if (!(initial.grid() == potential.grid())) throw GridMismatch();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  const auto k = grid_->wavenumbers();
  drift_phase_.resize(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) drift_phase_[i] = std::polar(1.0, -0.5 * k[i] * k[i] * dt);
  const auto v = potential.values();
  phase_.resize(v.size());
  kick_full_.resize(v.size());
  kick_half_.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    kick_full_[i] = std::polar(1.0, -v[i] * dt);
    kick_half_[i] = std::polar(1.0, -0.5 * v[i] * dt);
  }
  std::copy(initial.amplitudes().begin(), initial.amplitudes().end(), fft_.buffer().begin());
}

void SplitStepPropagator::kick(bool half) noexcept {
  auto psi = fft_.buffer();
  const Complex* trap = half ? kick_half_.data() : kick_full_.data();
  const double scale = g_eff_ * (half ? 0.5 * dt_ : dt_);
  const std::size_t n = psi.size();
  double largest = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = scale * (psi[i].real() * psi[i].real() + psi[i].imag() * psi[i].imag());
    phase_[i] = x;
    largest = std::max(largest, std::abs(x));
  }
  if (largest <= kSeriesPhaseLimit) {
    for (std::size_t i = 0; i < n; ++i) psi[i] = mul(psi[i], mul(trap[i], series_phase(phase_[i])));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      psi[i] = mul(psi[i], mul(trap[i], Complex(std::cos(phase_[i]), -std::sin(phase_[i]))));
    }
  }
}

void SplitStepPropagator::drift() noexcept {
  fft_.forward();
  auto spec = fft_.buffer();
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] = mul(spec[i], drift_phase_[i]);
  fft_.backward();
}

void SplitStepPropagator::advance(std::size_t steps) {
  if (steps == 0) return;
  kick(true);
  for (std::size_t s = 1; s < steps; ++s) {
    drift();
    kick(false);
  }
  drift();
  kick(true);
  steps_taken_ += steps;
  if (!all_finite(fft_.buffer())) {
    throw SolverError("wavefunction became non-finite at t = " + std::to_string(time()) +
                      " (time step too large?)");
  }
}

Wavefunction SplitStepPropagator::state() const {
  return Wavefunction(grid_, std::vector<Complex>(fft_.buffer().begin(), fft_.buffer().end()));
}

Wavefunction step_realtime(const Wavefunction& psi, const PotentialField& potential, double g_eff, double dt) {
  if (!all_finite(psi.amplitudes())) throw SolverError("input wavefunction is non-finite");
  SplitStepPropagator prop(psi, potential, g_eff, dt);
  prop.advance(1);
  return prop.state();
}

Trajectory evolve(const Wavefunction& initial, const PotentialField& potential, const EvolveParams& params,
                  std::span<const Observer> observers) {
  const std::size_t per_sample = params.steps_per_sample();
  const std::size_t samples = params.sample_count();
  SplitStepPropagator prop(initial, potential, params.g_eff, params.dt);

  Trajectory out{.times = {}, .position = {}, .energy = {}, .norm = {}, .final_state = initial};
  out.times.reserve(samples);
  for (std::size_t k = 1; k <= samples; ++k) {
    prop.advance(per_sample);
    const double t = static_cast<double>(k) * params.sample_interval;
    Wavefunction psi = prop.state();
    out.times.push_back(t);
    out.position.push_back(expectation_position(psi));
    out.energy.push_back(gpe_energy(psi, potential, params.g_eff));
    out.norm.push_back(quadrature_norm(psi));
    for (const auto& obs : observers) obs(t, psi);
    if (k == samples) out.final_state = std::move(psi);
  }
  return out;
}

double thomas_fermi_chemical_potential(const PotentialField& potential, double g_eff) {
  if (!(g_eff > 0.0)) throw InvalidArgument("Thomas-Fermi profile needs g_eff > 0");
  const auto v = potential.values();
  const double dz = potential.grid().spacing();
  const auto mass = [&](double mu) {
    double sum = 0.0;
    for (double x : v) sum += std::max(0.0, mu - x);
    return sum * dz / g_eff;
  };
  double lo = *std::min_element(v.begin(), v.end());
  double hi = lo + 1.0;
  while (mass(hi) < 1.0) hi = lo + 2.0 * (hi - lo);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Wavefunction thomas_fermi_state(const PotentialField& potential, double g_eff) {
  const double mu = thomas_fermi_chemical_potential(potential, g_eff);
  const auto v = potential.values();
  std::vector<Complex> amp(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) amp[i] = std::sqrt(std::max(0.0, (mu - v[i]) / g_eff));
  Wavefunction psi(potential.grid_ptr(), std::move(amp));
  psi.normalize();
  return psi;
}

GroundState ground_state(const GridPtr& grid, const PotentialField& potential, double g_eff,
                         const GroundStateParams& params) {
  if (!(*grid == potential.grid())) throw GridMismatch();
  const auto v = potential.values();
  const auto min_it = std::min_element(v.begin(), v.end());
  const double z0 = grid->node(static_cast<std::size_t>(min_it - v.begin()));
  // Gaussian about the potential minimum, plus the Thomas-Fermi profile when
  // interactions are strong enough for it to be the better starting point.
  auto guess = Wavefunction::from_function(grid, [z0](double z) {
    const double x = z - z0;
    return Complex(std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x), 0.0);
  });
  if (g_eff > 1.0) {
    const auto tf = thomas_fermi_state(potential, g_eff);
    for (std::size_t i = 0; i < guess.size(); ++i) guess[i] = tf[i] + 1e-3 * guess[i];
  }
  guess.normalize();
  return ground_state(guess, potential, g_eff, params);
}

GroundState ground_state(const Wavefunction& initial_guess, const PotentialField& potential, double g_eff,
                         const GroundStateParams& params) {
  if (!(initial_guess.grid() == potential.grid())) throw GridMismatch();
  if (!(params.dt_imag > 0.0)) throw InvalidArgument("dt_imag must be positive");
  if (!(params.energy_tol > 0.0)) throw InvalidArgument("energy_tol must be positive");

  const Grid& grid = initial_guess.grid();
  const auto v = potential.values();
  const double tau = params.dt_imag;
  const std::size_t n = grid.points();

  std::vector<double> drift(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = grid.wavenumber(i);
    drift[i] = std::exp(-0.5 * k * k * tau);
  }

  Fft fft(n);
  Fft energy_ws(n);
  auto psi = fft.buffer();
  std::copy(initial_guess.amplitudes().begin(), initial_guess.amplitudes().end(), psi.begin());

  const auto kick = [&](double t) {
    for (std::size_t i = 0; i < n; ++i) psi[i] *= std::exp(-(v[i] + g_eff * std::norm(psi[i])) * t);
  };
  const auto renormalize = [&] {
    double sum = 0.0;
    for (const auto& a : psi) sum += std::norm(a);
    const double scale = 1.0 / std::sqrt(sum * grid.spacing());
    for (auto& a : psi) a *= scale;
  };

  GroundState result{.psi = initial_guess, .energy = 0.0, .steps = 0, .energy_history = {}};
  double previous = energy_with(energy_ws, psi, grid, v, g_eff);
  for (std::size_t step = 1; step <= params.max_steps; ++step) {
    kick(0.5 * tau);
    fft.forward();
    for (std::size_t i = 0; i < n; ++i) psi[i] *= drift[i];
    fft.backward();
    kick(0.5 * tau);
    renormalize();
    if (!all_finite(psi)) throw SolverError("imaginary-time relaxation became non-finite");

    const double energy = energy_with(energy_ws, psi, grid, v, g_eff);
    result.energy_history.push_back(energy);
    const bool converged = std::abs(energy - previous) < params.energy_tol * std::abs(energy);
    previous = energy;
    if (converged && step > 1) {
      result.psi = Wavefunction(initial_guess.grid_ptr(), std::vector<Complex>(psi.begin(), psi.end()));
      result.psi.fix_global_phase();
      result.energy = energy;
      result.steps = step;
      return result;
    }
  }
  throw SolverError("ground state did not converge within " + std::to_string(params.max_steps) + " steps");
}

double condensate_half_length(const Wavefunction& psi, double fraction) {
  const auto amp = psi.amplitudes();
  std::size_t peak = 0;
  double peak_density = 0.0;
  for (std::size_t i = 0; i < amp.size(); ++i) {
    if (std::norm(amp[i]) > peak_density) {
      peak_density = std::norm(amp[i]);
      peak = i;
    }
  }
  const double threshold = fraction * peak_density;
  std::size_t right = peak;
  while (right + 1 < amp.size() && std::norm(amp[right + 1]) >= threshold) ++right;
  std::size_t left = peak;
  while (left > 0 && std::norm(amp[left - 1]) >= threshold) --left;
  const Grid& g = psi.grid();
  return 0.5 * (g.node(right) - g.node(left));
}

}  // namespace gpe
