#include <benchmark/benchmark.h>

#include "tfmod/convolution.hpp"
#include "tfmod/gabor.hpp"
#include "tfmod/mixed_norms.hpp"
#include "tfmod/modspace.hpp"

namespace {

using namespace tfmod;

SignalNd bench_signal(const GridSpec& g) {
  SignalParams p;
  p.seed = 1;
  return standard_signal(g, SignalKind::random, p);
}

void BM_Stft(benchmark::State& state) {
  const GridSpec g({static_cast<std::size_t>(state.range(0))});
  const SignalNd f = bench_signal(g), phi = standard_signal(g, SignalKind::gaussian);
  for (auto _ : state) benchmark::DoNotOptimize(stft(f, phi));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Stft)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_Analysis(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const GridSpec g({n});
  const GaborSystem sys(standard_signal(g, SignalKind::gaussian), LatticeSpec{{2}, {4}});
  const SignalNd f = bench_signal(g);
  for (auto _ : state) benchmark::DoNotOptimize(analysis(f, sys));
}
BENCHMARK(BM_Analysis)->RangeMultiplier(2)->Range(32, 512);

void BM_ModulationNorm(benchmark::State& state) {
  const GridSpec g({static_cast<std::size_t>(state.range(0))});
  const SignalNd f = bench_signal(g), phi = standard_signal(g, SignalKind::gaussian);
  const ModNormSpec spec{MixedNormSpec(ExponentVector({0.5, 2.0}), {1, 0}, Weight::polynomial(2, 1.0)), phi};
  for (auto _ : state) benchmark::DoNotOptimize(modulation_norm(f, spec));
}
BENCHMARK(BM_ModulationNorm)->RangeMultiplier(2)->Range(16, 128);

void BM_IteratedSeqNorm(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<cplx> v(n * n * n);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i % 7) - 3.0;
  const SequenceNd a({n, n, n}, std::move(v));
  const MixedNormSpec spec(ExponentVector({1.0, kInf, 0.5}), {2, 0, 1}, Weight::exponential(3, 0.2));
  for (auto _ : state) benchmark::DoNotOptimize(iterated_seq_norm(a, spec));
}
BENCHMARK(BM_IteratedSeqNorm)->Arg(8)->Arg(16)->Arg(32);

void BM_CanonicalDual(benchmark::State& state) {
  const GridSpec g({static_cast<std::size_t>(state.range(0))});
  const GaborSystem sys(standard_signal(g, SignalKind::gaussian), LatticeSpec{{2}, {4}});
  for (auto _ : state) benchmark::DoNotOptimize(canonical_dual(sys));
}
BENCHMARK(BM_CanonicalDual)->Arg(32)->Arg(64)->Arg(128);

void BM_SemidiscreteSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(semidiscrete_sweep(1, 50));
}
BENCHMARK(BM_SemidiscreteSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
