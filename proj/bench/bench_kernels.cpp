#include "ovrank/counts.hpp"
#include "ovrank/verifier.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_rank_class_table(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0)), c = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(ovrank::rank_class_table(n, c));
}

void BM_rank_class_table_serial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0)), c = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(ovrank::rank_class_table_serial(n, c));
}

const ovrank::RankClassTable& sweep_table() {
    static const auto t = ovrank::rank_class_table(1600, 3);
    return t;
}

void BM_verify_subadditivity(benchmark::State& state) {
    const int hi = static_cast<int>(state.range(0));
    const auto& t = sweep_table();
    for (auto _ : state) benchmark::DoNotOptimize(ovrank::verify_subadditivity(3, 0, 9, hi, t));
}

void BM_verify_subadditivity_serial(benchmark::State& state) {
    const int hi = static_cast<int>(state.range(0));
    const auto& t = sweep_table();
    for (auto _ : state) benchmark::DoNotOptimize(ovrank::verify_subadditivity_serial(3, 0, 9, hi, t));
}

void BM_pbar_euler(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ovrank::pbar_series(static_cast<int>(state.range(0))));
}

void BM_pbar_theta(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ovrank::pbar_series_theta(static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_rank_class_table)->Args({1000, 3})->Args({1000, 5})->Args({2000, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rank_class_table_serial)->Args({1000, 3})->Args({1000, 5})->Args({2000, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_subadditivity)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_subadditivity_serial)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pbar_euler)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pbar_theta)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
