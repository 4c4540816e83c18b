#include <benchmark/benchmark.h>

#include "vmimo/config_io.hpp"
#include "vmimo/equilibrium.hpp"
#include "vmimo/experiments.hpp"
#include "vmimo/power_game.hpp"

namespace {

void BM_BitErrorProbability(benchmark::State& state) {
    const auto scheme = static_cast<vmimo::ModulationScheme>(state.range(0));
    double gamma = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(vmimo::bit_error_probability(scheme, gamma));
        gamma = gamma < 30.0 ? gamma * 1.01 : 0.1;
    }
}
BENCHMARK(BM_BitErrorProbability)->Arg(0)->Arg(1)->Arg(2);

void BM_NetUtility(benchmark::State& state) {
    const vmimo::GameConfig config = vmimo::default_game_config();
    const vmimo::Action action = vmimo::Action::transmit(35.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(vmimo::net_utility(action, config).net_utility);
}
BENCHMARK(BM_NetUtility);

void BM_ThresholdPower(benchmark::State& state) {
    const vmimo::GameConfig config = vmimo::default_game_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(vmimo::threshold_power(config).power_mw);
}
BENCHMARK(BM_ThresholdPower);

void BM_FindEquilibriumTwoPlayers(benchmark::State& state) {
    vmimo::GameConfig config = vmimo::default_game_config();
    config.n_players = 2;
    const auto initial = vmimo::StrategyProfile::all_silent(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(vmimo::find_equilibrium(config, initial).is_nash);
}
BENCHMARK(BM_FindEquilibriumTwoPlayers);

void BM_EnumerateBruteforceTwoPlayers(benchmark::State& state) {
    vmimo::GameConfig config = vmimo::default_game_config();
    config.n_players = 2;
    for (auto _ : state)
        benchmark::DoNotOptimize(vmimo::enumerate_nash_bruteforce(config).size());
}
BENCHMARK(BM_EnumerateBruteforceTwoPlayers);

void BM_NetUtilitySweep(benchmark::State& state) {
    vmimo::ExperimentSpec spec;
    spec.name = "bench_net_utility";
    spec.kind = vmimo::ExperimentKind::NetUtilitySweep;
    spec.sweep = vmimo::SweepAxis{"power_mw", 1.0, 100.0, 100,
                                  vmimo::SweepAxis::Scale::Linear};
    vmimo::GameConfig siso = vmimo::default_game_config();
    siso.antennas = {1, 1};
    spec.configs.push_back({"SISO", siso});
    spec.configs.push_back({"VMIMO-2x2", vmimo::default_game_config()});
    spec.output_path = "bench.csv";
    const vmimo::RunOptions options{static_cast<int>(state.range(0)), 12345};
    for (auto _ : state)
        benchmark::DoNotOptimize(vmimo::run_net_utility_sweep(spec, options).rows());
}
BENCHMARK(BM_NetUtilitySweep)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
