#include <benchmark/benchmark.h>

#include "lfe/assembly.hpp"
#include "lfe/functions.hpp"

namespace {

void BM_Fe1dBuild(benchmark::State& state) {
  const lfe::Fe1dParams p{4.0, static_cast<int>(state.range(0)), 1.2, 1e-12};
  for (auto _ : state) benchmark::DoNotOptimize(lfe::build_uniform_operator(p));
}
BENCHMARK(BM_Fe1dBuild)->Arg(10)->Arg(20)->Arg(40);

void BM_Partition(benchmark::State& state) {
  const lfe::ParametricCurve curve = lfe::builtin_curve(lfe::BuiltinCurve::SmoothBlob);
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(lfe::scan_partition(curve, lfe::GridSpec{lfe::default_box(curve), K, K}));
}
BENCHMARK(BM_Partition)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const lfe::ParametricCurve curve = lfe::builtin_curve(lfe::BuiltinCurve::SmoothBlob);
  const int K = static_cast<int>(state.range(0));
  const lfe::PatchDatabase db = lfe::scan_partition(curve, lfe::GridSpec{lfe::default_box(curve), K, K});
  const lfe::SolverContext ctx(lfe::SolverConfig{});
  const lfe::Oracle f = lfe::make_function("sinxy");
  long points = 0;
  for (auto _ : state) {
    const auto out = lfe::solve_all(f, db, ctx, 1);
    const auto cloud = lfe::assemble(out, 0.5 * lfe::fine_spacing(db.grid, ctx));
    points = static_cast<long>(cloud.size());
  }
  state.counters["points"] = static_cast<double>(points);
  state.SetItemsProcessed(state.iterations() * points);
}
BENCHMARK(BM_Solve)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
