#include <doctest.h>

#include <cmath>

#include "gpe/echo.hpp"
#include "gpe/error.hpp"
#include "gpe/physics.hpp"
#include "gpe/propagator.hpp"
#include "oracles.hpp"

using gpe::Complex;

TEST_CASE("harmonic linear ground state") {
  const auto g = gpe::make_grid(40.0, 512);
  const auto V = gpe::trap_potential(g, {0.0, 0.0});
  const auto gs = gpe::ground_state(g, V, 0.0, {});
  CHECK(std::abs(gs.energy - 0.5) < 1e-6);
  const auto exact = gpe::Wavefunction::from_function(g, [](double z) { return Complex(oracle::ho_ground(z)); });
  CHECK(gpe::fidelity(gs.psi, exact) > 1.0 - 1e-8);
  const Complex c = gs.psi[g->center_index()];
  CHECK(c.imag() == 0.0);
  CHECK(c.real() > 0.0);
}

TEST_CASE("relaxation lowers the energy monotonically") {
  const auto g = gpe::make_grid(40.0, 256);
  const auto V = gpe::trap_potential(g, {0.05, 0.0});
  const auto gs = gpe::ground_state(g, V, 100.0, {});
  REQUIRE(gs.energy_history.size() == gs.steps);
  for (std::size_t i = 1; i < gs.energy_history.size(); ++i) {
    CHECK(gs.energy_history[i] <= gs.energy_history[i - 1] + 1e-12 * std::abs(gs.energy_history[i - 1]));
  }
}

TEST_CASE("Thomas-Fermi state against an independent oracle") {
  const auto g = gpe::make_grid(60.0, 1024);
  const auto V = gpe::trap_potential(g, {0.05, 0.0});
  const auto tf = gpe::thomas_fermi_state(V, 6300.0);
  const auto rho = oracle::thomas_fermi_density(std::vector<double>(V.values().begin(), V.values().end()), 6300.0,
                                                g->spacing());
  for (std::size_t i = 0; i < g->points(); ++i) CHECK(std::norm(tf[i]) == doctest::Approx(rho[i]).epsilon(1e-9));
}

TEST_CASE("strongly interacting ground state approaches Thomas-Fermi") {
  const auto g = gpe::make_grid(60.0, 1024);
  const auto V = gpe::trap_potential(g, {0.05, 0.0});
  const double geff = 0.063 * 1e5;
  const auto gs = gpe::ground_state(g, V, geff, {});
  const auto rho = oracle::thomas_fermi_density(std::vector<double>(V.values().begin(), V.values().end()), geff,
                                                g->spacing());
  // Compare sqrt densities inside 90% of the Thomas-Fermi radius.
  double zmax = 0.0;
  for (std::size_t i = 0; i < g->points(); ++i) {
    if (rho[i] > 0.0) zmax = std::max(zmax, std::abs(g->node(i)));
  }
  double diff = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < g->points(); ++i) {
    if (std::abs(g->node(i)) > 0.9 * zmax) continue;
    const double d = std::abs(gs.psi[i]) - std::sqrt(rho[i]);
    diff += d * d;
    ref += rho[i];
  }
  CHECK(std::sqrt(diff / ref) < 0.05);
  CHECK(gpe::condensate_half_length(gs.psi) == doctest::Approx(11.1).epsilon(0.1));
  const auto parts = gpe::gpe_energy_parts(gs.psi, V, geff);
  CHECK(parts.chemical_potential() == doctest::Approx(gpe::thomas_fermi_chemical_potential(V, geff)).epsilon(0.02));
}

TEST_CASE("relaxation gives up after max_steps") {
  const auto g = gpe::make_grid(40.0, 256);
  const auto V = gpe::trap_potential(g, {0.05, 0.0});
  CHECK_THROWS_AS(gpe::ground_state(g, V, 100.0, {.dt_imag = 1e-3, .energy_tol = 1e-15, .max_steps = 10}),
                  gpe::SolverError);
}

TEST_CASE("echo ground state uses the clean undisplaced trap") {
  gpe::EchoConfig cfg;
  cfg.grid_length = 40.0;
  cfg.grid_points = 512;
  cfg.n_atoms = 0.0;
  cfg.speckle.n_max = 20;
  const auto gs = gpe::echo_ground_state(cfg);
  CHECK(std::abs(gpe::expectation_position(gs.psi)) < 1e-10);
  CHECK(gs.energy > 0.5);
}
