// Serial reference vs OpenMP kernels on the Petersen (S5, 120 elements) and
// larger symmetric-group actions.

#include <benchmark/benchmark.h>

#include "symctl/control.hpp"
#include "symctl/isotypic.hpp"
#include "symctl/kernels.hpp"
#include "symctl/network.hpp"
#include "symctl/representations.hpp"

namespace {

using namespace symctl;

// S_n acting on its n points, lifted with node dimension d.
struct Workload {
  std::vector<Matrix> action;
  std::vector<double> weights;
};

Workload make_workload(int n, int d) {
  std::string cycle = "(";
  for (int i = 1; i <= n; ++i) cycle += std::to_string(i) + (i < n ? " " : ")");
  const auto g = closure({Permutation::FromCycles("(1 2)", n),
                          Permutation::FromCycles(cycle, n)},
                         n);
  Workload w;
  for (const auto& el : g.elements()) w.action.push_back(lift(el.perm, d));
  for (std::size_t i = 0; i < g.order(); ++i) w.weights.push_back(1.0 / (1.0 + i));
  return w;
}

void BM_WeightedSumSerial(benchmark::State& state) {
  const auto w = make_workload(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::weighted_sum(w.weights, w.action));
  }
}

void BM_WeightedSumParallel(benchmark::State& state) {
  const auto w = make_workload(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(weighted_sum(w.weights, w.action));
}

void BM_CommutatorSerial(benchmark::State& state) {
  const auto w = make_workload(static_cast<int>(state.range(0)), 4);
  const Matrix a = Matrix::Ones(w.action[0].rows(), w.action[0].cols());
  for (auto _ : state) benchmark::DoNotOptimize(reference::max_commutator(a, w.action));
}

void BM_CommutatorParallel(benchmark::State& state) {
  const auto w = make_workload(static_cast<int>(state.range(0)), 4);
  const Matrix a = Matrix::Ones(w.action[0].rows(), w.action[0].cols());
  for (auto _ : state) benchmark::DoNotOptimize(max_commutator(a, w.action));
}

void BM_EnumerateSerial(benchmark::State& state) {
  const Matrix a = assemble(petersen(0.0, 1.0).spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reference::enumerate_input_configs(a, static_cast<int>(state.range(0))));
  }
}

void BM_EnumerateParallel(benchmark::State& state) {
  const Matrix a = assemble(petersen(0.0, 1.0).spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_input_configs(a, static_cast<int>(state.range(0))));
  }
}

BENCHMARK(BM_WeightedSumSerial)->Arg(5)->Arg(6);
BENCHMARK(BM_WeightedSumParallel)->Arg(5)->Arg(6);
BENCHMARK(BM_CommutatorSerial)->Arg(5)->Arg(6);
BENCHMARK(BM_CommutatorParallel)->Arg(5)->Arg(6);
BENCHMARK(BM_EnumerateSerial)->Arg(4)->Arg(5);
BENCHMARK(BM_EnumerateParallel)->Arg(4)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
