#include "stochlab/distributions.hpp"
#include "stochlab/rng.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_NextU64(benchmark::State& state) {
    stochlab::RandomStream s{stochlab::Seed{1}};
    for (auto _ : state) benchmark::DoNotOptimize(s.next_u64());
}
BENCHMARK(BM_NextU64);

void BM_NextUniform(benchmark::State& state) {
    stochlab::RandomStream s{stochlab::Seed{1}};
    for (auto _ : state) benchmark::DoNotOptimize(s.next_uniform());
}
BENCHMARK(BM_NextUniform);

void BM_StandardNormal(benchmark::State& state) {
    stochlab::RandomStream s{stochlab::Seed{1}};
    for (auto _ : state) benchmark::DoNotOptimize(stochlab::sample_standard_normal(s));
}
BENCHMARK(BM_StandardNormal);

void BM_Split(benchmark::State& state) {
    stochlab::RandomStream s{stochlab::Seed{1}};
    std::uint64_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(s.split(i++));
}
BENCHMARK(BM_Split);

} // namespace

BENCHMARK_MAIN();
