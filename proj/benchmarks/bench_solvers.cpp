// Micro and macro benchmarks for the two equilibrium solvers and their
// expensive primitives. Run manually: build/benchmarks/bench_solvers.

#include <benchmark/benchmark.h>

#include <vector>

#include "nashexec/closed_form.hpp"
#include "nashexec/fredholm.hpp"
#include "nashexec/game.hpp"
#include "nashexec/kernels.hpp"

using namespace nashexec;

namespace {

GameSpec make_game(int opportunists) {
  std::vector<InvestorSpec> investors{{-1.0, 0.1}};
  for (int i = 0; i < opportunists; ++i) investors.push_back({0.0, 0.1});
  return GameSpec{1.0, std::move(investors), DecayKernel::exponential(0.95)};
}

void BM_ClosedFormSolve(benchmark::State& state) {
  const GameSpec game = make_game(static_cast<int>(state.range(0)));
  const Grid grid = Grid::uniform(1.0, static_cast<int>(state.range(1)));
  for (auto _ : state) {
    EquilibriumSolution sol = solve_equilibrium_exponential(game, grid);
    benchmark::DoNotOptimize(sol.profile.rates.data());
  }
}
BENCHMARK(BM_ClosedFormSolve)
    ->Args({1, 1001})
    ->Args({5, 1001})
    ->Args({25, 401})
    ->Unit(benchmark::kMillisecond);

void BM_CollocationSolve(benchmark::State& state) {
  const GameSpec game = make_game(static_cast<int>(state.range(0)));
  const Grid grid = Grid::uniform(1.0, static_cast<int>(state.range(1)));
  for (auto _ : state) {
    EquilibriumSolution sol = solve_equilibrium_numeric(game, grid);
    benchmark::DoNotOptimize(sol.profile.rates.data());
  }
}
BENCHMARK(BM_CollocationSolve)
    ->Args({1, 301})
    ->Args({5, 301})
    ->Args({1, 1001})
    ->Unit(benchmark::kMillisecond);

void BM_MatrixExponential(benchmark::State& state) {
  const SystemMatrices mats =
      build_system_matrices(make_game(static_cast<int>(state.range(0))));
  const Eigen::MatrixXd scaled = mats.dynamics * 0.5;
  for (auto _ : state) {
    Eigen::MatrixXd result = matrix_exponential(scaled);
    benchmark::DoNotOptimize(result.data());
  }
}
BENCHMARK(BM_MatrixExponential)->Arg(1)->Arg(5)->Arg(25)->Unit(
    benchmark::kMicrosecond);

void BM_PositiveTypeCheck(benchmark::State& state) {
  const DecayKernel kernel = DecayKernel::exponential(0.95);
  for (auto _ : state) {
    PositiveTypeReport report =
        check_positive_type(kernel, 1.0, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(report.min_eigenvalue);
  }
}
BENCHMARK(BM_PositiveTypeCheck)->Arg(200)->Arg(400)->Unit(
    benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
