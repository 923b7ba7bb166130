#include "stochlab/models.hpp"
#include "stochlab/reaction.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_SsaEhrenfest(benchmark::State& state) {
    auto net = stochlab::ehrenfest_network(static_cast<std::uint64_t>(state.range(0)));
    stochlab::RandomStream s{stochlab::Seed{3}};
    for (auto _ : state) {
        stochlab::PopulationState init;
        init.counts = {state.range(0), 0};
        benchmark::DoNotOptimize(stochlab::ssa_run(net, init, 1.0, s));
    }
}
BENCHMARK(BM_SsaEhrenfest)->Arg(100)->Arg(1000);

void BM_MeanFieldRk4(benchmark::State& state) {
    auto net = stochlab::schlogl_network(1000);
    auto rhs = stochlab::mean_field(net);
    for (auto _ : state) {
        benchmark::DoNotOptimize(stochlab::integrate(rhs, {0.5}, 10.0, 0.01));
    }
}
BENCHMARK(BM_MeanFieldRk4);

} // namespace
