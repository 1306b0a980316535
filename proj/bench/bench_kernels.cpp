#include <benchmark/benchmark.h>

#include <random>

#include "entropic/kernels.hpp"
#include "entropic/model.hpp"
#include "entropic/solver.hpp"

using namespace entropic;

namespace {

Matrix random_kernel(int n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(-10.0, 0.0);
  return Matrix::NullaryExpr(n, n, [&] { return u(rng); });
}

template <Execution E>
void BM_ScalingSweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix K = random_kernel(n);
  Vector lu = Vector::Zero(n), lv = Vector::Zero(n);
  for (auto _ : state) {
    kernels::scale_rows(E, K, lv, lu);
    kernels::scale_cols(E, K, lu, lv);
    benchmark::DoNotOptimize(kernels::row_marginal_error(E, K, lu, lv));
  }
  state.SetItemsProcessed(state.iterations() * 3 * n * n);
}

template <Execution E>
void BM_Sinkhorn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const AssignmentInstance inst{Matrix::NullaryExpr(n, n, [&] { return u(rng); })};
  for (auto _ : state) {
    auto r = solve_sinkhorn(inst, 5.0, {1e-8, 100000, E});
    benchmark::DoNotOptimize(r.solution.x_eta.data());
  }
}

template <Execution E>
void BM_BasisEnumeration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LpInstance lp = AssignmentInstance{Matrix::Zero(n, n)}.to_lp();
  const ReducedSystem red = row_reduce(lp.A, lp.b);
  for (auto _ : state) {
    auto vs = kernels::basic_feasible_solutions(E, red.A, red.b, 1e-9);
    benchmark::DoNotOptimize(vs.data());
  }
  state.counters["bases"] = static_cast<double>(kernels::binomial(n * n, red.rank()));
}

}  // namespace

BENCHMARK(BM_ScalingSweep<Execution::serial>)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_ScalingSweep<Execution::parallel>)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_Sinkhorn<Execution::serial>)->Arg(32)->Arg(128)->Arg(256);
BENCHMARK(BM_Sinkhorn<Execution::parallel>)->Arg(32)->Arg(128)->Arg(256);
BENCHMARK(BM_BasisEnumeration<Execution::serial>)->Arg(3)->Arg(4);
BENCHMARK(BM_BasisEnumeration<Execution::parallel>)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
