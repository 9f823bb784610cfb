// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include "formula_forge/counting.hpp"
#include "formula_forge/graph.hpp"
#include "formula_forge/kernels.hpp"
#include "formula_forge/shortest.hpp"

using namespace ff;

namespace {

const std::vector<BigInt>& totals() {
    static const std::vector<BigInt> t = [] {
        std::vector<BigInt> v{0};
        for (std::int64_t n = 1; n <= 4096; ++n) v.push_back(count_ame(n));
        return v;
    }();
    return t;
}

void BM_Convolve(benchmark::State& state, kernels::Exec exec) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const auto& t = totals();
    for (auto _ : state) benchmark::DoNotOptimize(kernels::convolve(t, n, exec));
}

void BM_ShortestFill(benchmark::State& state, kernels::Exec exec) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        ShortestTable table(exec);
        table.fill(n);
        benchmark::DoNotOptimize(table.size_of(static_cast<std::int64_t>(n)));
    }
}

void BM_Graph(benchmark::State& state, kernels::Exec exec) {
    for (auto _ : state) benchmark::DoNotOptimize(build_graph(state.range(0), false, exec).edges.size());
}

}  // namespace

BENCHMARK_CAPTURE(BM_Convolve, serial, kernels::Exec::Serial)->Arg(1024)->Arg(4096);
BENCHMARK_CAPTURE(BM_Convolve, parallel, kernels::Exec::Parallel)->Arg(1024)->Arg(4096);
BENCHMARK_CAPTURE(BM_ShortestFill, serial, kernels::Exec::Serial)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ShortestFill, parallel, kernels::Exec::Parallel)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Graph, serial, kernels::Exec::Serial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Graph, parallel, kernels::Exec::Parallel)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
