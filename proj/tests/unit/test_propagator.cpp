#include <doctest.h>

#include <cmath>

#include "gpe/echo.hpp"
#include "gpe/error.hpp"
#include "gpe/physics.hpp"
#include "gpe/propagator.hpp"
#include "oracles.hpp"

using gpe::Complex;
using gpe::Wavefunction;

namespace {

Wavefunction gaussian(const gpe::GridPtr& g, double center) {
  return Wavefunction::from_function(g, [=](double z) { return Complex(oracle::ho_ground(z, center)); });
}

double second_moment(const Wavefunction& psi) {
  double s = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) s += psi.grid().node(i) * psi.grid().node(i) * std::norm(psi[i]);
  return s * psi.grid().spacing();
}

}  // namespace

TEST_CASE("norm is conserved to roundoff") {
  const auto g = gpe::make_grid(40.0, 512);
  gpe::SplitStepPropagator prop(gaussian(g, 1.0), gpe::trap_potential(g, {0.05, 0.0}), 50.0, 1e-3);
  prop.advance(5000);
  CHECK(std::abs(gpe::quadrature_norm(prop.state()) - 1.0) < 1e-12);
  CHECK(prop.steps_taken() == 5000);
  CHECK(prop.time() == doctest::Approx(5.0));
}

TEST_CASE("free Gaussian spreads as (1 + t^2) / 2") {
  const auto g = gpe::make_grid(80.0, 2048);
  gpe::SplitStepPropagator prop(gaussian(g, 0.0), gpe::PotentialField::zero(g), 0.0, 1e-3);
  for (double t : {1.0, 2.0, 4.0}) {
    prop.advance(static_cast<std::size_t>(std::llround((t - prop.time()) / 1e-3)));
    CHECK(second_moment(prop.state()) == doctest::Approx(0.5 * (1.0 + t * t)).epsilon(1e-4));
  }
}

TEST_CASE("coherent state oscillates as 3 cos t") {
  const auto g = gpe::make_grid(40.0, 1024);
  gpe::SplitStepPropagator prop(gaussian(g, 3.0), gpe::trap_potential(g, {0.0, 0.0}), 0.0, 1e-3);
  for (int k = 1; k <= 8; ++k) {
    prop.advance(1000);
    CHECK(std::abs(gpe::expectation_position(prop.state()) - 3.0 * std::cos(prop.time())) < 1e-4);
  }
}

TEST_CASE("fused kicks equal separate steps") {
  const auto g = gpe::make_grid(40.0, 256);
  const auto V = gpe::trap_potential(g, {0.05, 1.0});
  gpe::SplitStepPropagator fused(gaussian(g, 0.0), V, 20.0, 1e-3);
  fused.advance(200);
  Wavefunction psi = gaussian(g, 0.0);
  for (int s = 0; s < 200; ++s) psi = gpe::step_realtime(psi, V, 20.0, 1e-3);
  CHECK(gpe::l2_distance(fused.state(), psi) < 1e-11);
}

TEST_CASE("energy is conserved with the nonlinearity") {
  const auto g = gpe::make_grid(40.0, 512);
  const auto V = gpe::trap_potential(g, {0.05, 0.5});
  const auto psi0 = gaussian(g, 0.0);
  const double e0 = gpe::gpe_energy(psi0, V, 30.0);
  gpe::SplitStepPropagator prop(psi0, V, 30.0, 5e-4);
  prop.advance(10000);
  CHECK(std::abs(gpe::gpe_energy(prop.state(), V, 30.0) - e0) / e0 < 1e-5);
}

TEST_CASE("global error is second order in dt") {
  const auto g = gpe::make_grid(40.0, 512);
  const auto V = gpe::trap_potential(g, {0.05, 0.5});
  auto run = [&](double dt) {
    gpe::SplitStepPropagator p(gaussian(g, 0.0), V, 30.0, dt);
    p.advance(static_cast<std::size_t>(std::llround(2.0 / dt)));
    return p.state();
  };
  const auto a = run(4e-3), b = run(2e-3), c = run(1e-3);
  const double ratio = gpe::l2_distance(a, b) / gpe::l2_distance(b, c);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("evolve samples at the requested cadence") {
  const auto g = gpe::make_grid(40.0, 256);
  const auto V = gpe::trap_potential(g, {0.0, 0.0});
  gpe::EvolveParams p{.dt = 1e-3, .t_max = 1.0, .sample_interval = 0.25, .g_eff = 0.0};
  CHECK(p.steps_per_sample() == 250);
  CHECK(p.sample_count() == 4);
  std::vector<double> seen;
  const gpe::Observer obs = [&](double t, const Wavefunction&) { seen.push_back(t); };
  const auto traj = gpe::evolve(gaussian(g, 1.0), V, p, std::span<const gpe::Observer>(&obs, 1));
  REQUIRE(traj.times.size() == 4);
  CHECK(traj.times.back() == doctest::Approx(1.0));
  CHECK(seen == traj.times);
  CHECK(traj.position[3] == doctest::Approx(std::cos(1.0)).epsilon(1e-5));
  CHECK(traj.energy[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("invalid evolution parameters") {
  gpe::EvolveParams p{.dt = 3e-3, .t_max = 1.0, .sample_interval = 0.1, .g_eff = 0.0};
  CHECK_THROWS_AS(p.steps_per_sample(), gpe::InvalidArgument);
  p.dt = -1e-3;
  CHECK_THROWS_AS(p.steps_per_sample(), gpe::InvalidArgument);
  const auto g = gpe::make_grid(40.0, 256);
  const auto h = gpe::make_grid(40.0, 512);
  CHECK_THROWS_AS(gpe::SplitStepPropagator(gaussian(g, 0.0), gpe::PotentialField::zero(h), 0.0, 1e-3),
                  gpe::GridMismatch);
}

TEST_CASE("blow-up is reported") {
  const auto g = gpe::make_grid(40.0, 256);
  std::vector<Complex> a(256, Complex(1.0, 0.0));
  a[10] = Complex(std::numeric_limits<double>::infinity(), 0.0);
  gpe::SplitStepPropagator prop(Wavefunction(g, a), gpe::PotentialField::zero(g), 1.0, 1e-3);
  CHECK_THROWS_AS(prop.advance(1), gpe::SolverError);
}

TEST_CASE("halving dt barely moves the benchmark echo") {
  gpe::EchoConfig cfg;
  cfg.n_realizations = 3;
  cfg.t_max = 10.0;
  cfg.sample_interval = 1.0;
  const auto coarse = gpe::run_echo(cfg);
  cfg.dt *= 0.5;
  const auto fine = gpe::run_echo(cfg);
  CHECK(std::abs(coarse.fidelity.back() - fine.fidelity.back()) < 1e-5);
}
