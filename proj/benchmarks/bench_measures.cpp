#include <benchmark/benchmark.h>

#include <random>

#include "unruh/analytic.hpp"
#include "unruh/fock_oracle.hpp"
#include "unruh/harness.hpp"
#include "unruh/jacobi.hpp"

namespace {

// r in tenths so the argument list stays integral.
void BM_MeasuresAnalytic(benchmark::State& state) {
  const auto sp = unruh::SqueezingParameter::from_r(static_cast<double>(state.range(0)) / 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(unruh::measures_analytic(sp, 1e-10));
}
BENCHMARK(BM_MeasuresAnalytic)->Arg(0)->Arg(5)->Arg(10)->Arg(30)->Arg(50)->Arg(60)->Arg(80)->Arg(200)->Arg(3500);

void BM_LogNegativity(benchmark::State& state) {
  const auto sp = unruh::SqueezingParameter::from_r(static_cast<double>(state.range(0)) / 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(unruh::log_negativity(sp, 1e-10));
}
BENCHMARK(BM_LogNegativity)->Arg(10)->Arg(50)->Arg(100);

void BM_Oracle(benchmark::State& state) {
  const auto sp = unruh::SqueezingParameter::from_r(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(unruh::oracle_report(sp, state.range(0)));
}
BENCHMARK(BM_Oracle)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_JacobiDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 g{42};
  std::uniform_real_distribution<double> d{-1.0, 1.0};
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) a[i * n + j] = a[j * n + i] = d(g);
  }
  for (auto _ : state) benchmark::DoNotOptimize(unruh::symmetric_eigenvalues(a, n));
}
BENCHMARK(BM_JacobiDense)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  unruh::SweepRequest req;
  req.lo = 0.0;
  req.hi = 10.0;
  req.steps = 101;
  req.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(unruh::run_sweep(req));
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
