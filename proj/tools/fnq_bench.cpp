// Parallel pivoted search against the serial unpruned reference.
#include <benchmark/benchmark.h>

#include "fnq/solver.hpp"
#include "fnq/theorems.hpp"

namespace {

fnq::SolveTask pexider_task(const fnq::RingSpec& spec) {
  fnq::SolveTask t;
  t.ring = fnq::make_ring(spec);
  t.equations.push_back(fnq::parse_equation(fnq::kPexiderEquation));
  return t;
}

void BM_ReferenceGF3(benchmark::State& state) {
  auto t = pexider_task(fnq::RingSpec::gf(3, 1));
  for (auto _ : state) benchmark::DoNotOptimize(fnq::solve_reference(t).solutions.size());
}
BENCHMARK(BM_ReferenceGF3)->Unit(benchmark::kMillisecond);

void BM_UnprunedGF3(benchmark::State& state) {
  auto t = pexider_task(fnq::RingSpec::gf(3, 1));
  t.use_pivot = false;
  t.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fnq::solve(t).solutions.size());
}
BENCHMARK(BM_UnprunedGF3)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_PivotedGF5(benchmark::State& state) {
  auto t = pexider_task(fnq::RingSpec::gf(5, 1));
  t.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fnq::solve(t).solutions.size());
}
BENCHMARK(BM_PivotedGF5)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SofyUT2(benchmark::State& state) {
  fnq::SolveTask t;
  t.ring = fnq::make_ring(fnq::RingSpec::ut2(2));
  t.equations.push_back(fnq::parse_equation(fnq::kSofyEquation));
  t.params["eps"] = 5;
  t.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fnq::solve(t).solutions.size());
}
BENCHMARK(BM_SofyUT2)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
