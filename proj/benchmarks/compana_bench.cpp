#include <compana/asymptotics.hpp>
#include <compana/gamma.hpp>
#include <compana/rng.hpp>
#include <compana/sampling.hpp>
#include <compana/series.hpp>

#include <benchmark/benchmark.h>

#include <vector>

using namespace compana;

static void BM_ExtractCoefficient(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto spec = build_multiplicity_gf(5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(extract_coefficient(spec, n));
}
BENCHMARK(BM_ExtractCoefficient)->Arg(1000)->Arg(10000);

static void BM_ScaledCoefficient(benchmark::State& state) {
  const auto spec = build_multiplicity_gf(5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(scaled_coefficient(spec, 100000));
}
BENCHMARK(BM_ScaledCoefficient);

// One draw of n-1 cut bits plus the census scan, as in the Monte Carlo loop.
static void BM_DrawAndCensus(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  CensusScanner scanner(n, 3);
  Xoshiro256ss rng(1);
  std::vector<std::uint64_t> words;
  for (auto _ : state) {
    draw_cut_words(n, rng, words);
    benchmark::DoNotOptimize(scanner.scan(words));
  }
}
BENCHMARK(BM_DrawAndCensus)->Arg(1000)->Arg(1000000);

static void BM_ComplexGamma(benchmark::State& state) {
  std::complex<double> z(3.0, 9.06);
  for (auto _ : state) benchmark::DoNotOptimize(complex_gamma(z));
}
BENCHMARK(BM_ComplexGamma);

static void BM_HarmonicSumDirect(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(harmonic_sum_direct(1e6, 2));
}
BENCHMARK(BM_HarmonicSumDirect);

static void BM_HarmonicSumResidues(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(harmonic_sum_residues(1e6, 2));
}
BENCHMARK(BM_HarmonicSumResidues);

BENCHMARK_MAIN();
