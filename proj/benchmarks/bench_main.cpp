#include <benchmark/benchmark.h>

#include <vector>

#include "femtosim/analysis.hpp"
#include "femtosim/antenna.hpp"
#include "femtosim/channel.hpp"
#include "femtosim/engine.hpp"
#include "femtosim/random.hpp"

namespace {

void BM_QFunction(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-9;
        benchmark::DoNotOptimize(femtosim::q_function(x));
    }
}
BENCHMARK(BM_QFunction);

void BM_OutageAt(benchmark::State& state) {
    const femtosim::AnalysisParams params;
    double ratio = 1.0;
    for (auto _ : state) {
        ratio += 1e-9;
        benchmark::DoNotOptimize(femtosim::outage_at(ratio, params));
    }
}
BENCHMARK(BM_OutageAt);

void BM_CellAveragedOutage(benchmark::State& state) {
    const femtosim::AnalysisParams params;
    for (auto _ : state)
        benchmark::DoNotOptimize(femtosim::cell_averaged_outage(params));
}
BENCHMARK(BM_CellAveragedOutage);

void BM_PartitionInterference(benchmark::State& state) {
    femtosim::SectorConfig sectors;
    sectors.n_sectors = 3;
    femtosim::Rng rng = femtosim::make_stream(1, 0xbe9c, 0);
    std::vector<double> angles(1024);
    std::vector<double> powers(1024, 1.0);
    for (double& a : angles)
        a = femtosim::kTwoPi * femtosim::uniform01(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            femtosim::partition_interference(powers, angles, sectors));
}
BENCHMARK(BM_PartitionInterference);

void BM_MacroOutageTrials(benchmark::State& state) {
    femtosim::Scenario sc;
    sc.engine.trials = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(femtosim::estimate_macro_outage(sc));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MacroOutageTrials)->Arg(256)->Arg(2048);

} // namespace

BENCHMARK_MAIN();
