#include <benchmark/benchmark.h>

#include <random>

#include "mlca/correspondence.hpp"
#include "mlca/dynamics.hpp"
#include "mlca/finite_field.hpp"
#include "mlca/fp_matrix.hpp"
#include "mlca/laurent_matrix.hpp"
#include "mlca/oracle.hpp"

namespace {

using namespace mlca;

Rule sample_rule(std::uint32_t p, std::size_t r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (;;) {
    Rule g = random_rule({p, r, -2, 2, 3}, rng);
    if (is_confined(g)) return g;
  }
}

FpMatrix sample_matrix(std::uint32_t p, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  FpMatrix m(PrimeField(p), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<Residue>(rng() % p);
  }
  return m;
}

void BM_LogFixCounts(benchmark::State& state) {
  const Rule g = sample_rule(2, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(log_fix_counts(g, 20));
}
BENCHMARK(BM_LogFixCounts)->Arg(1)->Arg(2)->Arg(3);

void BM_LaurentDet(benchmark::State& state) {
  const Rule g = sample_rule(3, static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(laurent_det(g.matrix()));
}
BENCHMARK(BM_LaurentDet)->Arg(2)->Arg(4)->Arg(6);

void BM_Invariants(benchmark::State& state) {
  const Rule g = sample_rule(2, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(invariants(g));
}
BENCHMARK(BM_Invariants);

void BM_FpRank(benchmark::State& state) {
  const FpMatrix m = sample_matrix(2, static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(m.rank());
}
BENCHMARK(BM_FpRank)->Arg(64)->Arg(256)->Arg(600);

void BM_FpProduct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FpMatrix a = sample_matrix(3, n, 5), b = sample_matrix(3, n, 6);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_FpProduct)->Arg(64)->Arg(256);

void BM_ExtFieldMultiply(benchmark::State& state) {
  const auto field = ExtField::random(2, static_cast<std::size_t>(state.range(0)), 7);
  ExtElem x = field->generator() + field->one();
  const ExtElem y = field->generator();
  for (auto _ : state) {
    x = x * y;
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_ExtFieldMultiply)->Arg(6)->Arg(12)->Arg(24);

void BM_BuildChain(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_chain(2, static_cast<std::size_t>(state.range(0)), 8));
}
BENCHMARK(BM_BuildChain)->Arg(6)->Arg(12);

void BM_StabilizedCount(benchmark::State& state) {
  const Rule g = sample_rule(2, 1, 9);
  LadderOptions opts;
  opts.max_dimension = 600;
  for (auto _ : state) benchmark::DoNotOptimize(stabilized_count(g, static_cast<std::uint64_t>(state.range(0)), 0, opts));
}
BENCHMARK(BM_StabilizedCount)->Arg(1)->Arg(3)->Arg(5);

}  // namespace
BENCHMARK_MAIN();
