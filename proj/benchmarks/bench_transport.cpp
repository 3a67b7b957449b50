#include <benchmark/benchmark.h>

#include <random>

#include "atomristor/config.hpp"
#include "atomristor/negf.hpp"
#include "atomristor/parallel.hpp"
#include "atomristor/scf.hpp"
#include "atomristor/transport.hpp"

using namespace atomristor;

namespace {

TridiagonalHamiltonian random_chain(std::size_t n) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  TridiagonalHamiltonian h;
  const double t = 15.0;
  for (std::size_t i = 0; i < n; ++i) h.diagonal.push_back(2.0 * t + u(rng));
  h.off_diagonal.assign(n - 1, -t);
  h.left = {0.0, t};
  h.right = {0.0, t};
  return h;
}

void BM_GreensFunction(benchmark::State& state) {
  const auto h = random_chain(static_cast<std::size_t>(state.range(0)));
  double e = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(greens_function(h, e));
    e += 1e-9;
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GreensFunction)->RangeMultiplier(2)->Range(16, 1024)->Complexity(benchmark::oN);

void BM_TransmissionSpectrum(benchmark::State& state) {
  const auto h = random_chain(90);
  std::vector<double> energies;
  for (int k = 0; k < 2000; ++k) energies.push_back(-0.2 + 1.5 * k / 2000.0);
  set_thread_count(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(transmission_spectrum(h, energies));
  set_thread_count(1);
}
BENCHMARK(BM_TransmissionSpectrum)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_IvSweep(benchmark::State& state) {
  const auto config = default_config();
  for (auto _ : state) {
    for (auto s : {ResistanceState::hrs, ResistanceState::lrs}) {
      benchmark::DoNotOptimize(
          iv_sweep(config.device, s, config.run.biases_v, 300.0, config.transport()));
    }
  }
}
BENCHMARK(BM_IvSweep)->Unit(benchmark::kMillisecond);

void BM_ScfOneVolt(benchmark::State& state) {
  const auto config = default_config();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        scf_loop(config.device, ResistanceState::hrs, 1.0, config.scf, config.transport()));
  }
}
BENCHMARK(BM_ScfOneVolt)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
