#include <doctest.h>

#include <cmath>
#include <set>

#include "gpe/echo.hpp"
#include "gpe/error.hpp"

namespace {

gpe::EchoConfig small_config() {
  gpe::EchoConfig c;
  c.grid_length = 40.0;
  c.grid_points = 256;
  c.speckle = {1e-2, 1, 20, 0};
  c.n_realizations = 4;
  c.dt = 1e-3;
  c.t_max = 2.0;
  c.sample_interval = 0.1;
  c.n_atoms = 2000;
  return c;
}

// Reference splitmix64 stream (Steele, Lea, Flood).
std::uint64_t splitmix_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

TEST_CASE("realization seeds follow the splitmix64 stream") {
  CHECK(gpe::realization_seed(0, 0) == 0xE220A8397B1DCDAFULL);
  std::uint64_t state = 20070917;
  std::set<std::uint64_t> seen;
  for (std::size_t j = 0; j < 100; ++j) {
    const auto s = gpe::realization_seed(20070917, j);
    CHECK(s == splitmix_next(state));
    seen.insert(s);
  }
  CHECK(seen.size() == 100);
}

TEST_CASE("pair enumeration") {
  const auto p = gpe::realization_pairs(4);
  REQUIRE(p.size() == 6);
  CHECK(p.front() == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(p[2] == std::pair<std::size_t, std::size_t>{0, 3});
  CHECK(p.back() == std::pair<std::size_t, std::size_t>{2, 3});
  CHECK(gpe::realization_pairs(11).size() == 55);
}

TEST_CASE("config defaults and effective coupling") {
  const gpe::EchoConfig c;
  CHECK(c.displacement == 3.0);
  CHECK(c.n_realizations == 11);
  CHECK(c.trap.quartic_K == 0.05);
  CHECK(c.n_atoms == 1e5);
  CHECK(c.coupling == 0.063);
  CHECK(c.g_eff() == doctest::Approx(6300.0));
  CHECK_NOTHROW(c.validate());
  auto phys = c;
  phys.physical = gpe::PhysicalParams::rubidium87_reference();
  CHECK(phys.effective_coupling() == doctest::Approx(gpe::dimensionless_coupling(*phys.physical)));
}

TEST_CASE("config validation") {
  auto c = small_config();
  c.n_realizations = 1;
  CHECK_THROWS_AS(c.validate(), gpe::InvalidArgument);
  c = small_config();
  c.displacement = -1.0;
  CHECK_THROWS_AS(c.validate(), gpe::InvalidArgument);
  c = small_config();
  c.speckle.n_max = 21;
  CHECK_THROWS_AS(c.validate(), gpe::InvalidArgument);
  c = small_config();
  c.sample_interval = 0.1005;
  CHECK_THROWS_AS(c.validate(), gpe::InvalidArgument);
}

TEST_CASE("echo curve structure") {
  const auto cfg = small_config();
  const auto curve = gpe::run_echo(cfg);
  REQUIRE(curve.size() == 21);
  CHECK(curve.times.front() == 0.0);
  CHECK(curve.times.back() == doctest::Approx(2.0));
  CHECK(curve.fidelity.front() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(curve.n_pairs == 6);
  CHECK(curve.seeds.size() == 4);
  CHECK(curve.per_pair.size() == 21 * 6);
  for (std::size_t k = 0; k < curve.size(); ++k) {
    CHECK(curve.fidelity[k] <= 1.0 + 1e-12);
    CHECK(curve.amplitude_fidelity[k] >= curve.fidelity[k] - 1e-12);
    double mean = 0.0;
    for (double f : curve.pairs_at(k)) mean += f;
    CHECK(mean / 6.0 == doctest::Approx(curve.fidelity[k]).epsilon(1e-14));
  }
  CHECK(curve.fidelity.back() < 1.0);
}

TEST_CASE("identical Hamiltonians give unit fidelity") {
  auto cfg = small_config();
  cfg.speckle.epsilon = 0.0;
  const auto curve = gpe::run_echo(cfg);
  for (double f : curve.fidelity) CHECK(f == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("results do not depend on the worker count") {
  const auto cfg = small_config();
  const auto serial = gpe::run_echo(cfg);
  CHECK(serial.fidelity == gpe::run_echo(cfg).fidelity);
  for (std::size_t w : {2u, 3u, 8u}) {
    gpe::EchoOptions opts;
    opts.workers = w;
    const auto par = gpe::run_echo(cfg, opts);
    CHECK(par.fidelity == serial.fidelity);
    CHECK(par.amplitude_fidelity == serial.amplitude_fidelity);
    CHECK(par.per_pair == serial.per_pair);
  }
}

TEST_CASE("snapshots arrive at the requested samples") {
  const auto cfg = small_config();
  gpe::EchoOptions opts;
  opts.snapshot_every = 10;
  std::vector<std::pair<std::size_t, std::size_t>> calls;
  opts.snapshot_sink = [&](std::size_t r, std::size_t k, const gpe::Wavefunction& psi) {
    calls.emplace_back(r, k);
    CHECK(gpe::quadrature_norm(psi) == doctest::Approx(1.0).epsilon(1e-10));
  };
  gpe::run_echo(cfg, opts);
  CHECK(calls.size() == 12);
  CHECK(calls.back() == std::pair<std::size_t, std::size_t>{3, 20});
}

TEST_CASE("pairwise statistics") {
  const auto curve = gpe::run_echo(small_config());
  const auto stats = gpe::pairwise_stats(curve);
  CHECK(stats.stddev_defined);
  for (std::size_t k = 0; k < curve.size(); ++k) {
    CHECK(stats.mean[k] == doctest::Approx(curve.fidelity[k]));
    CHECK(stats.min[k] <= stats.mean[k]);
    CHECK(stats.max[k] >= stats.mean[k]);
    CHECK(stats.stddev[k] >= 0.0);
  }
  gpe::EchoOptions opts;
  opts.keep_per_pair = false;
  CHECK_THROWS_AS(gpe::pairwise_stats(gpe::run_echo(small_config(), opts)), gpe::InvalidArgument);
}

TEST_CASE("supplied ground state must match") {
  const auto cfg = small_config();
  auto other = cfg;
  other.grid_points = 512;
  gpe::EchoOptions opts;
  opts.ground = gpe::echo_ground_state(other);
  CHECK_THROWS_AS(gpe::run_echo(cfg, opts), gpe::InvalidArgument);
}
