// Serial reference vs OpenMP kernel on a 2-axis classification sweep.

#include <benchmark/benchmark.h>

#include "twoperiodic/batch.hpp"

using namespace twoperiodic;

namespace {

SweepConfig grid(std::size_t side) {
  return {Coefficients(2, 1, 1, 2, 4, 3, 3, 1), SweepAxis{Coef::b1, 0.1, 10.0, side},
          SweepAxis{Coef::d1, 0.1, 10.0, side}, {}};
}

void run(benchmark::State& state, Execution exec) {
  const auto cells = sweep_grid(grid(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    auto out = classify_batch(cells, {}, exec);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cells.size()));
}

void BM_SweepSerial(benchmark::State& s) { run(s, Execution::Serial); }
void BM_SweepParallel(benchmark::State& s) { run(s, Execution::Parallel); }

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
