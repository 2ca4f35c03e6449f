#include <benchmark/benchmark.h>

#include <cmath>

#include "qturn/pipeline.hpp"

using namespace qturn;

namespace {

const char* kWords[] = {"URDL", "URDRURDLDL", "URURDLDL"};

void BM_Apply(benchmark::State& state) {
    ModelHomeo h(CyclicWord::parse(kWords[state.range(0)]));
    double a = 0.0;
    for (auto _ : state) {
        a += 0.001;
        benchmark::DoNotOptimize(h.apply({std::cos(a), std::sin(a)}));
    }
    state.SetLabel(kWords[state.range(0)]);
}
BENCHMARK(BM_Apply)->DenseRange(0, 2);

void BM_ApplyInverse(benchmark::State& state) {
    ModelHomeo h(CyclicWord::parse(kWords[state.range(0)]));
    double a = 0.0;
    for (auto _ : state) {
        a += 0.001;
        benchmark::DoNotOptimize(h.apply_inverse({std::cos(a), std::sin(a)}));
    }
    state.SetLabel(kWords[state.range(0)]);
}
BENCHMARK(BM_ApplyInverse)->DenseRange(0, 2);

void BM_PlIndex(benchmark::State& state) {
    ModelHomeo h(CyclicWord::parse(kWords[state.range(0)]));
    for (auto _ : state) benchmark::DoNotOptimize(pl_index(h));
    state.SetLabel(kWords[state.range(0)]);
}
BENCHMARK(BM_PlIndex)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_HLength(benchmark::State& state) {
    ModelHomeo h(CyclicWord::parse("URDRURDLDL"));
    ClosedCurve c = ClosedCurve::circle(1.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(h_length(c, h));
}
BENCHMARK(BM_HLength)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_OrbitFate(benchmark::State& state) {
    ModelHomeo h(CyclicWord::parse("URDRURDLDL"));
    for (auto _ : state) benchmark::DoNotOptimize(orbit_fate(h, {0.3, 0.8}));
}
BENCHMARK(BM_OrbitFate)->Unit(benchmark::kMicrosecond);

void BM_RecoverWord(benchmark::State& state) {
    ModelHomeo h(CyclicWord::parse("URDRURDLDL"));
    ClosedCurve c = ClosedCurve::circle(1.0, 512);
    for (auto _ : state) benchmark::DoNotOptimize(recover_word(h, c));
}
BENCHMARK(BM_RecoverWord)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
