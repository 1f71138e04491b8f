#include <benchmark/benchmark.h>

#include <random>

#include "takagi/measures.hpp"
#include "takagi/rep.hpp"
#include "takagi/rng.hpp"

using namespace takagi;

namespace {

BitString random_bits(std::mt19937_64& gen, std::size_t depth) {
    std::vector<std::uint8_t> b(depth);
    for (auto& v : b) v = gen() & 1;
    return BitString(b);
}

void BM_StableSeries(benchmark::State& state) {
    Params p = Params::from_gamma(0.6);
    std::mt19937_64 gen(1);
    BitString xi = random_bits(gen, 64);
    for (auto _ : state) benchmark::DoNotOptimize(stable_series(xi, p).value);
}
BENCHMARK(BM_StableSeries);

void BM_TakagiCurve(benchmark::State& state) {
    Params p = Params::from_gamma(0.6);
    std::mt19937_64 gen(2);
    BitString x = random_bits(gen, 64);
    for (auto _ : state) benchmark::DoNotOptimize(takagi_curve(x, p).value);
}
BENCHMARK(BM_TakagiCurve);

void BM_BridgeSeriesOracle(benchmark::State& state) {
    Params p = Params::from_gamma(0.6);
    std::mt19937_64 gen(3);
    BitString xi = random_bits(gen, 64), x = random_bits(gen, 64);
    for (auto _ : state) benchmark::DoNotOptimize(bridge_series(xi, x, p).value);
}
BENCHMARK(BM_BridgeSeriesOracle);

void BM_HDiffRep(benchmark::State& state) {
    Params p = Params::from_gamma(0.6);
    std::mt19937_64 gen(4);
    BitString xi = random_bits(gen, 64), x = random_bits(gen, 64), y = random_bits(gen, 64);
    for (auto _ : state) benchmark::DoNotOptimize(h_diff_rep(xi, x, y, p).value);
}
BENCHMARK(BM_HDiffRep);

void BM_SampleRho(benchmark::State& state) {
    Params p = Params::from_gamma(0.75);
    for (auto _ : state) {
        EmpiricalMeasure m = sample_rho(p, static_cast<std::uint64_t>(state.range(0)), 42, 256,
                                        true);
        benchmark::DoNotOptimize(m.mass.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleRho)->Arg(1 << 16)->Arg(1 << 20);

void BM_OccupationGrid(benchmark::State& state) {
    Params p = Params::from_gamma(0.6);
    BitString xi = BitString::zeros(64);
    for (auto _ : state) {
        auto v = bridge_samples(xi, p, static_cast<std::uint64_t>(state.range(0)));
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OccupationGrid)->Arg(1 << 16)->Arg(1 << 18);

}  // namespace

BENCHMARK_MAIN();
