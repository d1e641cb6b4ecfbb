// Serial reference vs OpenMP sweep and M/M/1 replication throughput.
//
//   ./build/bench/placesim_bench --benchmark_filter=Sweep

#include "placesim/queue_mc.hpp"
#include "placesim/scenario.hpp"
#include "placesim/sweep.hpp"

#include <benchmark/benchmark.h>

#include <numeric>
#include <omp.h>

namespace {

placesim::ScenarioFile contention_sweep()
{
    auto file = placesim::load_scenario_file(PLACESIM_CONFIG_DIR "/contention.toml");
    file.sweep->seeds.resize(16);
    std::iota(file.sweep->seeds.begin(), file.sweep->seeds.end(), 1);
    return file;
}

void BM_SweepSerial(benchmark::State& state)
{
    const auto file = contention_sweep();
    const auto points = placesim::expand_grid(file);
    for (auto _ : state) {
        auto rows = placesim::run_sweep_serial(file, points);
        benchmark::DoNotOptimize(rows.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(points.size()));
}
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);

void BM_SweepParallel(benchmark::State& state)
{
    const auto file = contention_sweep();
    const auto points = placesim::expand_grid(file);
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto rows = placesim::run_sweep_parallel(file, points, jobs);
        benchmark::DoNotOptimize(rows.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(points.size()));
}
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

std::vector<std::uint64_t> seeds(std::size_t n)
{
    std::vector<std::uint64_t> s(n);
    std::iota(s.begin(), s.end(), 1);
    return s;
}

void BM_Mm1Serial(benchmark::State& state)
{
    const auto s = seeds(8);
    for (auto _ : state) {
        auto r = placesim::queue_mc::replicate_serial(8.0, 0.1, 100000, s);
        benchmark::DoNotOptimize(r.data());
    }
}
BENCHMARK(BM_Mm1Serial)->Unit(benchmark::kMillisecond);

void BM_Mm1Parallel(benchmark::State& state)
{
    const auto s = seeds(8);
    for (auto _ : state) {
        auto r = placesim::queue_mc::replicate_parallel(8.0, 0.1, 100000, s, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(r.data());
    }
}
BENCHMARK(BM_Mm1Parallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
