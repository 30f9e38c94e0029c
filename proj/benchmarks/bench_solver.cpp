#include <benchmark/benchmark.h>

#include <vector>

#include "degdiff/selfsim.hpp"
#include "degdiff/solver.hpp"

namespace {

void BM_Tridiagonal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> lo(n, -1.0), di(n, 3.0), up(n, -1.0), rhs(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(degdiff::solve_tridiagonal(lo, di, up, rhs));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Tridiagonal)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oN);

void BM_Step(benchmark::State& state) {
  const degdiff::Grid grid(12.0, static_cast<std::size_t>(state.range(0)));
  const degdiff::DivParams p{static_cast<double>(state.range(1)), static_cast<double>(state.range(2)), 1.0, 0.0};
  const degdiff::Snapshot ic = degdiff::mound_ic(grid, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(degdiff::step(ic, 1e-3, p, grid, 1e-10));
}
BENCHMARK(BM_Step)->Args({2400, 1, 0})->Args({2400, 2, 1})->Args({2400, 1, 1});

void BM_Run(benchmark::State& state) {
  const degdiff::Grid grid(12.0, 600);
  const degdiff::DivParams p{1.0, 0.0, 1.0, 0.0};
  degdiff::Schedule s;
  s.t_end = 1.0;
  s.snapshot_times = degdiff::Schedule::log_spaced(1e-2, 1.0, 10);
  const degdiff::Snapshot ic = degdiff::mound_ic(grid, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(degdiff::run(ic, p, grid, s));
}
BENCHMARK(BM_Run)->Unit(benchmark::kMillisecond);

void BM_FrontConstantQuadrature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(degdiff::front_constant_quadrature(2.0, 1.0));
}
BENCHMARK(BM_FrontConstantQuadrature);

}  // namespace

BENCHMARK_MAIN();
