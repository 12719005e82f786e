#include <benchmark/benchmark.h>

#include "pwlinf/classify.hpp"
#include "pwlinf/cycles.hpp"
#include "pwlinf/flow.hpp"
#include "pwlinf/series.hpp"
#include "pwlinf/unfold.hpp"

namespace {

using namespace pwlinf;

SystemSpec reference_perturbed() {
    SystemSpec spec;
    spec.gamma_L = -0.125;
    spec.gamma_R = 1638355.0 / 13106841.0;
    spec.alpha_L = 65.0 / 64.0;
    spec.alpha_R = (1.0 + spec.gamma_R * spec.gamma_R) * (552751.0 / 556327.0);
    spec.b = -260534.0 / 1045519.0;
    return spec;
}

void BM_DisplacementSeries(benchmark::State& state) {
    const SystemSpec spec = reference_perturbed();
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(displacement_series(spec, order));
    }
}
BENCHMARK(BM_DisplacementSeries)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_ZoneFlow(benchmark::State& state) {
    const ZoneFlow zone = left_zone(reference_perturbed());
    const Vec2 start{0.0, 250.0};
    double t = 0.0;
    for (auto _ : state) {
        t += 1e-6;
        benchmark::DoNotOptimize(zone.at(start, 3.0 + t));
    }
}
BENCHMARK(BM_ZoneFlow);

void BM_DisplacementNumeric(benchmark::State& state) {
    const SystemSpec spec = reference_perturbed();
    for (auto _ : state) {
        benchmark::DoNotOptimize(displacement_numeric(spec, 1e-3));
    }
}
BENCHMARK(BM_DisplacementNumeric);

void BM_FindCycles(benchmark::State& state) {
    const SystemSpec spec = reference_perturbed();
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_cycles(spec, 0.01, grid));
    }
}
BENCHMARK(BM_FindCycles)->Arg(100)->Arg(400);

void BM_ClassifyInfinity(benchmark::State& state) {
    const SystemSpec spec = reference_perturbed();
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify_infinity(spec));
    }
}
BENCHMARK(BM_ClassifyInfinity);

void BM_Order3Unfold(benchmark::State& state) {
    const UnfoldingTarget target{-4.43719886e-8, 3.993655760e-5, -1.15001344e-2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(order3_unfold(-0.125, 1.0, target));
    }
}
BENCHMARK(BM_Order3Unfold);

void BM_ModelRegionCount(benchmark::State& state) {
    double d1 = -1e-8;
    for (auto _ : state) {
        d1 = -d1 * 1.0000001;
        benchmark::DoNotOptimize(model_region_count({d1, 3.99e-5, -1.15e-2}));
        d1 = -d1;
    }
}
BENCHMARK(BM_ModelRegionCount);

}  // namespace

BENCHMARK_MAIN();
