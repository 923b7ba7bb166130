#include "stochlab/rgraph.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_ErdosRenyiSparse(benchmark::State& state) {
    stochlab::RandomStream s{stochlab::Seed{5}};
    auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(stochlab::erdos_renyi(n, 2.0 / static_cast<double>(n), s));
    }
}
BENCHMARK(BM_ErdosRenyiSparse)->Arg(2000)->Arg(20000);

void BM_TriangleCount(benchmark::State& state) {
    stochlab::RandomStream s{stochlab::Seed{5}};
    auto g = stochlab::erdos_renyi(2000, 0.002, s);
    for (auto _ : state) benchmark::DoNotOptimize(stochlab::triangle_count(g));
}
BENCHMARK(BM_TriangleCount);

void BM_BuckleyOsthus(benchmark::State& state) {
    stochlab::RandomStream s{stochlab::Seed{5}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            stochlab::buckley_osthus(static_cast<std::uint64_t>(state.range(0)), 1.0, s));
    }
}
BENCHMARK(BM_BuckleyOsthus)->Arg(100000);

} // namespace
