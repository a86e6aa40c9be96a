#include <benchmark/benchmark.h>

#include "mlde/qmod.hpp"

namespace {

void BM_Eisenstein4(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(mlde::eisenstein(4, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Eisenstein4)->Arg(30)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
