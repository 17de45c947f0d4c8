#include <benchmark/benchmark.h>

#include "pairdecomp/pairdecomp.hpp"

using namespace pairdecomp;

namespace {

StateOperator pd_state(std::size_t d, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_state(d, 2 * d, rng);
}

void BM_HermitianEig(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Matrix m = pd_state(d, 1).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(m));
}
BENCHMARK(BM_HermitianEig)->DenseRange(2, 8, 2)->Arg(16);

void BM_FidelitySpectrum(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const StateOperator rho = pd_state(d, 2);
  const StateOperator omega = pd_state(d, 3);
  for (auto _ : state) benchmark::DoNotOptimize(fidelity_spectrum(rho, omega));
}
BENCHMARK(BM_FidelitySpectrum)->DenseRange(2, 8, 2)->Arg(16);

void BM_OptimalPair(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const StateOperator rho = pd_state(d, 4);
  const StateOperator omega = pd_state(d, 5);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_pair(rho, omega));
}
BENCHMARK(BM_OptimalPair)->DenseRange(2, 8, 2)->Arg(16);

void BM_OptimalPairGeneral(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(6);
  const StateOperator rho = random_state(d, d / 2, rng);
  const StateOperator omega = random_state(d, d - 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_pair_general(rho, omega));
}
BENCHMARK(BM_OptimalPairGeneral)->DenseRange(2, 8, 2);

void BM_MatchingProfile(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealMatrix w(n, n);
  for (double& x : w.values) x = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(matching_profile(w));
}
BENCHMARK(BM_MatchingProfile)->RangeMultiplier(2)->Range(2, 32);

void BM_RandomSearch(benchmark::State& state) {
  const StateOperator rho = pd_state(4, 8);
  const StateOperator omega = pd_state(4, 9);
  SearchOptions opt;
  opt.m = 2;
  opt.samples = 200;
  opt.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(random_search(rho, omega, opt));
}
BENCHMARK(BM_RandomSearch)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
