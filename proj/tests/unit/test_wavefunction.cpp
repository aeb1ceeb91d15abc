#include <doctest.h>

#include <cmath>
#include <random>

#include "gpe/echo.hpp"
#include "gpe/error.hpp"
#include "gpe/wavefunction.hpp"
#include "oracles.hpp"

using gpe::Complex;
using gpe::Wavefunction;

namespace {

Wavefunction gaussian(const gpe::GridPtr& g, double center, double k0 = 0.0) {
  return Wavefunction::from_function(g, [=](double z) {
    return Complex(oracle::ho_ground(z, center), 0.0) * std::polar(1.0, k0 * z);
  });
}

Wavefunction random_state(const gpe::GridPtr& g, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  std::vector<Complex> a(g->points());
  for (auto& c : a) c = {n(rng), n(rng)};
  return Wavefunction(g, std::move(a)).normalized();
}

}  // namespace

TEST_CASE("quadrature of a sampled Gaussian") {
  const auto g = gpe::make_grid(40.0, 1024);
  const auto psi = gaussian(g, 0.0);
  CHECK(gpe::quadrature_norm(psi) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gpe::expectation_position(gaussian(g, 2.5)) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("displaced Gaussian overlap is exp(-d^2/4)") {
  const auto g = gpe::make_grid(40.0, 1024);
  for (double d : {0.0, 0.5, 1.0, 3.0}) {
    const double F = gpe::fidelity(gaussian(g, 0.0), gaussian(g, d));
    CHECK(F == doctest::Approx(std::exp(-d * d / 2.0)).epsilon(1e-10));
  }
}

TEST_CASE("amplitude fidelity ignores phases") {
  const auto g = gpe::make_grid(40.0, 1024);
  const auto a = gaussian(g, 0.0);
  const auto b = gaussian(g, 0.0, 2.0);
  CHECK(gpe::fidelity(a, b) == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
  CHECK(gpe::amplitude_fidelity(a, b) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fidelity bounds hold for random states") {
  const auto g = gpe::make_grid(20.0, 128);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_state(g, rng);
    const auto b = random_state(g, rng);
    const double F = gpe::fidelity(a, b);
    const double Fa = gpe::amplitude_fidelity(a, b);
    CHECK(F >= 0.0);
    CHECK(F <= 1.0 + 1e-12);
    CHECK(Fa >= F - 1e-14);
    CHECK(Fa <= 1.0 + 1e-12);
    CHECK(gpe::fidelity(a, b) == doctest::Approx(gpe::fidelity(b, a)).epsilon(1e-14));
  }
  const auto a = random_state(g, rng);
  CHECK(gpe::fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("global phase fixing") {
  const auto g = gpe::make_grid(20.0, 64);
  auto psi = gaussian(g, 0.3);
  for (auto& c : psi.amplitudes()) c *= std::polar(1.0, 1.2);
  psi.fix_global_phase();
  const Complex c = psi[g->center_index()];
  CHECK(c.imag() == 0.0);
  CHECK(c.real() > 0.0);
}

TEST_CASE("errors") {
  const auto g = gpe::make_grid(20.0, 64);
  const auto h = gpe::make_grid(20.0, 128);
  CHECK_THROWS_AS(Wavefunction(g, std::vector<Complex>(10)), gpe::InvalidArgument);
  CHECK_THROWS_AS(Wavefunction(g, std::vector<Complex>(64)).normalized(), gpe::InvalidArgument);
  CHECK_THROWS_AS(gpe::inner_product(gaussian(g, 0.0), gaussian(h, 0.0)), gpe::GridMismatch);
  std::vector<double> bad(64, 0.0);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(gpe::PotentialField(g, bad), gpe::InvalidArgument);
}

TEST_CASE("potential arithmetic") {
  const auto g = gpe::make_grid(20.0, 64);
  const auto a = gpe::PotentialField(g, std::vector<double>(64, 1.5));
  const auto b = a + a + 1.0;
  CHECK(b[7] == 4.0);
  CHECK(gpe::PotentialField::zero(g)[0] == 0.0);
}
