#include <benchmark/benchmark.h>

#include <random>

#include "finclear/dynamic_clearing.hpp"
#include "finclear/static_clearing.hpp"

using namespace finclear;

namespace {

// Dense random liability network with a terminal sink node, sized by `n`.
DynamicInstance make_instance(int n, int horizon) {
  std::mt19937 rng(12345 + n * 101 + horizon);
  std::uniform_real_distribution<double> value(1.0, 100.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Matrix p = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && (j == n - 1 || coin(rng) < 0.5)) p(i, j) = value(rng);
  LiabilityMatrix liabilities(p, n - 1);
  const double scale = liabilities.entries().sum() / std::max(1, n - 1);
  std::vector<Vector> inflows;
  std::uniform_real_distribution<double> cash(0.0, scale);
  for (int t = 0; t < horizon; ++t) {
    Vector c = Vector::Zero(n);
    for (int i = 0; i + 1 < n; ++i) c(i) = cash(rng);
    inflows.push_back(std::move(c));
  }
  return DynamicInstance(std::move(liabilities), std::move(inflows), horizon,
                         1.01);
}

void bm_static_matrix(benchmark::State& state) {
  const DynamicInstance inst =
      make_instance(static_cast<int>(state.range(0)), 1);
  const StaticInstance flat(inst.liabilities, inst.inflows[0]);
  for (auto _ : state)
    benchmark::DoNotOptimize(clear_matrix(flat).report.total_unpaid);
}
BENCHMARK(bm_static_matrix)->Arg(5)->Arg(10)->Arg(20);

void bm_static_prorata_lp(benchmark::State& state) {
  const DynamicInstance inst =
      make_instance(static_cast<int>(state.range(0)), 1);
  const StaticInstance flat(inst.liabilities, inst.inflows[0]);
  for (auto _ : state)
    benchmark::DoNotOptimize(clear_prorata_lp(flat).report.total_unpaid);
}
BENCHMARK(bm_static_prorata_lp)->Arg(5)->Arg(10)->Arg(20);

void bm_static_prorata_fda(benchmark::State& state) {
  const DynamicInstance inst =
      make_instance(static_cast<int>(state.range(0)), 1);
  const StaticInstance flat(inst.liabilities, inst.inflows[0]);
  for (auto _ : state)
    benchmark::DoNotOptimize(clear_prorata_fda(flat).iterations);
}
BENCHMARK(bm_static_prorata_fda)->Arg(5)->Arg(10)->Arg(20);

void bm_dynamic_matrix(benchmark::State& state) {
  const DynamicInstance inst = make_instance(
      static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(clear_dynamic_matrix(inst).report.loss);
}
BENCHMARK(bm_dynamic_matrix)->Args({5, 3})->Args({8, 3})->Args({10, 5});

void bm_dynamic_prorata_sequential(benchmark::State& state) {
  const DynamicInstance inst = make_instance(
      static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        clear_dynamic_prorata_sequential(inst).report.loss);
}
BENCHMARK(bm_dynamic_prorata_sequential)
    ->Args({5, 3})
    ->Args({10, 5})
    ->Args({20, 5});

}  // namespace

BENCHMARK_MAIN();
