#include <benchmark/benchmark.h>

#include "feedin/monte_carlo.hpp"
#include "feedin/scenario.hpp"
#include "feedin/thresholds.hpp"
#include "feedin/valuation.hpp"

namespace {

using namespace feedin;

const Scheme kCollar = Collar{25.0, kBaseCap, 15.0};

void BM_CollarValue(benchmark::State& state) {
    const ProjectValuation valuation(kCollar, MarketParams{}, ProjectParams{});
    double P = 20.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(valuation.value_and_slope(P));
        P = P < 80.0 ? P + 0.37 : 20.0;
    }
}
BENCHMARK(BM_CollarValue);

void BM_CollarThreshold(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(threshold(kCollar, MarketParams{}, ProjectParams{}));
    }
}
BENCHMARK(BM_CollarThreshold)->Unit(benchmark::kMillisecond);

void BM_CollarThresholdRegulatory(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(threshold_ru(kCollar, MarketParams{}, ProjectParams{}, RegulatoryParams{}));
    }
}
BENCHMARK(BM_CollarThresholdRegulatory)->Unit(benchmark::kMillisecond);

void BM_MonteCarloCollar(benchmark::State& state) {
    SimConfig cfg;
    cfg.n_paths = static_cast<std::uint64_t>(state.range(0));
    cfg.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc_project_value(kCollar, 30.0, MarketParams{}, ProjectParams{}, cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloCollar)->Arg(10'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
