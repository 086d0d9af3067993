#include <benchmark/benchmark.h>

#include "ffqaoa/ed.hpp"
#include "ffqaoa/evolution.hpp"
#include "ffqaoa/models.hpp"
#include "ffqaoa/optimizer.hpp"
#include "ffqaoa/rng.hpp"

namespace {

using namespace ffqaoa;

QaoaParams seeded_params(int depth, std::uint64_t seed) {
  Rng rng(seed);
  QaoaParams p;
  p.depth = depth;
  p.thetas_z.resize(depth);
  p.thetas_x.resize(depth);
  for (int i = 0; i < depth; ++i) {
    p.thetas_z(i) = rng.uniform(0.0, 6.28);
    p.thetas_x(i) = rng.uniform(0.0, 6.28);
  }
  return p;
}

void BM_FusedEnergyGradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int depth = static_cast<int>(state.range(1));
  const CouplingConfig config = frustrated_ring(n, 0.5, 0.55, 0.45);
  const EvolutionCache cache = make_cache(config, 1.0);
  const QaoaParams params = seeded_params(depth, 7);
  RVec grad;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qaoa_energy_gradient(cache, params, grad));
  }
}
BENCHMARK(BM_FusedEnergyGradient)->Args({13, 78})->Args({13, 42})->Args({9, 36});

void BM_EnergyOnly(benchmark::State& state) {
  const CouplingConfig config = frustrated_ring(13, 0.5, 0.55, 0.45);
  const EvolutionCache cache = make_cache(config, 1.0);
  const QaoaParams params = seeded_params(78, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qaoa_energy(cache, params));
  }
}
BENCHMARK(BM_EnergyOnly);

void BM_Diagonalize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CouplingConfig config = frustrated_ring(n, 0.5, 0.55, 0.45);
  const NambuMatrix h = build_h(config, 0.85, FermionParity::Even);
  for (auto _ : state) {
    benchmark::DoNotOptimize(diagonalize(h, FermionParity::Even));
  }
}
BENCHMARK(BM_Diagonalize)->Arg(13)->Arg(101);

void BM_GapPoint(benchmark::State& state) {
  const CouplingConfig config = frustrated_ring(101, 0.5, 0.55, 0.45);
  for (auto _ : state) {
    benchmark::DoNotOptimize(many_body_gap(config, 0.8544));
  }
}
BENCHMARK(BM_GapPoint);

void BM_DenseQaoaState(benchmark::State& state) {
  const CouplingConfig config = frustrated_ring(9, 0.5, 0.55, 0.45);
  const QaoaParams params = seeded_params(8, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dense_qaoa_state(config, params));
  }
}
BENCHMARK(BM_DenseQaoaState);

void BM_RestartLbfgs(benchmark::State& state) {
  const CouplingConfig config = frustrated_ring(9, 0.5, 0.55, 0.45);
  const EvolutionCache cache = make_cache(config, 1.0);
  std::uint64_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_once(cache, 36, derive_seed(3, k++)));
  }
}
BENCHMARK(BM_RestartLbfgs)->Unit(benchmark::kMillisecond);

}

BENCHMARK_MAIN();
