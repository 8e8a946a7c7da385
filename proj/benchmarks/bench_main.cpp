#include <benchmark/benchmark.h>

#include "interkernel/analysis.hpp"
#include "interkernel/denotational.hpp"
#include "interkernel/dsl.hpp"
#include "interkernel/harness.hpp"
#include "interkernel/operational.hpp"

using namespace interkernel;

namespace {

const Interaction& filtering_model() {
    static const Interaction i =
        parse_interaction("seq(loopSeq(strict(a!m1,b?m1)),seq(loopSeq(alt(a!m2,b?m3)),a!m4))");
    return i;
}

void BM_CountByDepth(benchmark::State& state) {
    const EnumSpec spec{3, 3, 3};
    for (auto _ : state) benchmark::DoNotOptimize(count_by_depth(spec));
}
BENCHMARK(BM_CountByDepth);

void BM_EnumerateDepth3(benchmark::State& state) {
    const Enumerator en({1, 1, 3});
    for (auto _ : state) {
        std::size_t n = 0;
        en.for_each([&](const Interaction&) {
            ++n;
            return true;
        });
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_EnumerateDepth3);

void BM_Frontier(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(frontier(filtering_model()));
}
BENCHMARK(BM_Frontier);

void BM_FrontierStructural(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(frontier_structural(filtering_model()));
}
BENCHMARK(BM_FrontierStructural);

void BM_SigmaU(benchmark::State& state) {
    const auto bound = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sigma_u(filtering_model(), bound));
}
BENCHMARK(BM_SigmaU)->DenseRange(1, 4);

void BM_SigmaO(benchmark::State& state) {
    const auto bound = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sigma_o(filtering_model(), bound));
}
BENCHMARK(BM_SigmaO)->DenseRange(1, 4);

void BM_AnalyzeMqtt(benchmark::State& state) {
    const Interaction model = mqtt_model();
    const auto traces = generate_concurrent_traces(model, static_cast<std::size_t>(state.range(0)), 4, 7);
    std::size_t actions = 0;
    for (auto _ : state) {
        for (const auto& t : traces) {
            benchmark::DoNotOptimize(analyze(model, t));
            actions += t.size();
        }
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(actions));
}
BENCHMARK(BM_AnalyzeMqtt)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
