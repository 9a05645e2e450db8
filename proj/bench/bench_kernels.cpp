#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fklab/finite_field.hpp"
#include "fklab/kernels.hpp"

using namespace fklab;

namespace {

// state.range(0): log2 q for F_{2^n}; state.range(1): thread count (parallel variants).
void BM_KloostermanSerial(benchmark::State& state) {
    const auto F = FiniteField::get(2, static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::kloosterman_histogram_serial(*F, 3, 5));
    state.SetItemsProcessed(state.iterations() * (F->order() - 1));
}

void BM_KloostermanParallel(benchmark::State& state) {
    const auto F = FiniteField::get(2, static_cast<unsigned>(state.range(0)));
    kernels::set_threads(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::kloosterman_histogram_parallel(*F, 3, 5));
    state.SetItemsProcessed(state.iterations() * (F->order() - 1));
}

std::vector<std::uint64_t> random_exponents(std::size_t n, std::uint64_t m) {
    std::mt19937_64 rng(1);
    std::vector<std::uint64_t> v(n);
    for (auto& x : v) x = rng() % m;
    return v;
}

void BM_PhaseSerial(benchmark::State& state) {
    const auto v = random_exponents(static_cast<std::size_t>(state.range(0)), 255);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::phase_histogram_serial(v, 255));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PhaseParallel(benchmark::State& state) {
    const auto v = random_exponents(static_cast<std::size_t>(state.range(0)), 255);
    kernels::set_threads(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::phase_histogram_parallel(v, 255));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_HyperbolaSerial(benchmark::State& state) {
    const auto F = FiniteField::get(static_cast<std::uint32_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::hyperbola_triples_serial(*F));
}

void BM_HyperbolaParallel(benchmark::State& state) {
    const auto F = FiniteField::get(static_cast<std::uint32_t>(state.range(0)), 1);
    kernels::set_threads(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::hyperbola_triples_parallel(*F));
}

}  // namespace

BENCHMARK(BM_KloostermanSerial)->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_KloostermanParallel)->ArgsProduct({{12, 16}, {1, 2, 4}})->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_PhaseSerial)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PhaseParallel)->ArgsProduct({{1 << 16, 1 << 20}, {1, 2, 4}})->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_HyperbolaSerial)->Arg(31)->Arg(61)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HyperbolaParallel)->ArgsProduct({{31, 61}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
