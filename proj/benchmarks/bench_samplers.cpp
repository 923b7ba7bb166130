#include "stochlab/alias.hpp"
#include "stochlab/knuth_yao.hpp"

#include <benchmark/benchmark.h>

namespace {

std::vector<double> geometric_weights(std::size_t n) {
    std::vector<double> w(n);
    double v = 1.0;
    for (auto& x : w) {
        x = v;
        v *= 0.7;
    }
    return w;
}

void BM_AliasBuild(benchmark::State& state) {
    auto w = geometric_weights(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(stochlab::AliasTable(w));
}
BENCHMARK(BM_AliasBuild)->Arg(16)->Arg(256)->Arg(4096);

void BM_AliasSample(benchmark::State& state) {
    stochlab::AliasTable table(geometric_weights(static_cast<std::size_t>(state.range(0))));
    stochlab::RandomStream s{stochlab::Seed{7}};
    for (auto _ : state) benchmark::DoNotOptimize(table.sample(s));
}
BENCHMARK(BM_AliasSample)->Arg(16)->Arg(4096);

void BM_KnuthYaoSample(benchmark::State& state) {
    std::vector<double> probs(static_cast<std::size_t>(state.range(0)),
                              1.0 / static_cast<double>(state.range(0)));
    stochlab::KnuthYaoSampler ky(probs);
    stochlab::RandomStream s{stochlab::Seed{7}};
    for (auto _ : state) benchmark::DoNotOptimize(ky.sample(s));
}
BENCHMARK(BM_KnuthYaoSample)->Arg(3)->Arg(64);

} // namespace
