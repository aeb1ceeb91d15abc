#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "gpe/echo.hpp"
#include "gpe/fft.hpp"
#include "gpe/physics.hpp"
#include "gpe/propagator.hpp"

namespace {

gpe::Wavefunction gaussian(const gpe::GridPtr& grid, double center) {
  return gpe::Wavefunction::from_function(grid, [center](double z) {
           return gpe::Complex(std::exp(-0.5 * (z - center) * (z - center)), 0.0);
         })
      .normalized();
}

void BM_FftRoundTrip(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  gpe::Fft fft(n);
  for (std::size_t i = 0; i < n; ++i) fft.buffer()[i] = gpe::Complex(std::sin(0.1 * i), 0.0);
  for (auto _ : state) {
    fft.forward();
    fft.backward();
    benchmark::DoNotOptimize(fft.buffer().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_FftRoundTrip)->RangeMultiplier(2)->Range(512, 8192);

void BM_SplitStep(benchmark::State& state) {
  const auto grid = gpe::make_grid(60.0, static_cast<std::size_t>(state.range(0)));
  const auto V = gpe::trap_potential(grid, gpe::TrapSpec{0.05, 3.0});
  const auto start = gpe::thomas_fermi_state(gpe::trap_potential(grid, gpe::TrapSpec{0.05, 0.0}), 6300.0);
  gpe::SplitStepPropagator prop(start, V, 6300.0, 1e-4);
  for (auto _ : state) prop.advance(100);
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_SplitStep)->Arg(1024)->Arg(2048)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_PairReduction(benchmark::State& state) {
  const auto grid = gpe::make_grid(60.0, 2048);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<gpe::Wavefunction> states;
  for (std::size_t j = 0; j < n; ++j) states.push_back(gaussian(grid, 0.01 * static_cast<double>(j)));
  for (auto _ : state) {
    double sum = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) sum += gpe::fidelity(states[a], states[b]);
    }
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_PairReduction)->Arg(11)->Arg(21);

}  // namespace
BENCHMARK_MAIN();
