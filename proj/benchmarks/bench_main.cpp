#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fcprog/abba.hpp"
#include "fcprog/emd.hpp"
#include "fcprog/gru.hpp"
#include "fcprog/hilbert.hpp"
#include "fcprog/rng.hpp"
#include "fcprog/timeseries.hpp"

namespace {

fcprog::TimeSeries two_tone(std::size_t n) {
    std::vector<double> v(n);
    const double dt = 1.0 / 3600.0;  // one-second cadence in hours
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i);
        v[i] = std::sin(2.0 * M_PI * 0.05 * t) + 0.4 * std::sin(2.0 * M_PI * 0.005 * t) +
               1e-4 * t;
    }
    return fcprog::TimeSeries(0.0, dt, std::move(v));
}

void BM_SiftOneImf(benchmark::State& state) {
    const auto series = two_tone(static_cast<std::size_t>(state.range(0)));
    const fcprog::SiftConfig cfg;
    for (auto _ : state) {
        auto result = fcprog::sift_one_imf(series, cfg);
        benchmark::DoNotOptimize(result);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SiftOneImf)->Arg(1 << 12)->Arg(1 << 16);

void BM_Decompose(benchmark::State& state) {
    const auto series = two_tone(static_cast<std::size_t>(state.range(0)));
    const fcprog::SiftConfig cfg;
    for (auto _ : state) {
        auto result = fcprog::decompose(series, cfg);
        benchmark::DoNotOptimize(result);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Decompose)->Arg(1 << 12)->Arg(1 << 15);

void BM_HilbertTransform(benchmark::State& state) {
    const auto series = two_tone(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto sig = fcprog::hilbert_transform(series);
        benchmark::DoNotOptimize(sig);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HilbertTransform)->Arg(1 << 12)->Arg(1 << 18);

void BM_AbbaCompress(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    fcprog::Rng rng(7);
    std::vector<double> v(n);
    double walk = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        walk += rng.normal();
        v[i] = walk;
    }
    const fcprog::TimeSeries series(0.0, 1.0, std::move(v));
    for (auto _ : state) {
        auto result = fcprog::compress(series, 2.0);
        benchmark::DoNotOptimize(result);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AbbaCompress)->Arg(1 << 12)->Arg(1 << 16);

void BM_GruTrainEpoch(benchmark::State& state) {
    const std::size_t n_sym = 200;
    std::vector<std::size_t> symbols(n_sym);
    for (std::size_t i = 0; i < n_sym; ++i) symbols[i] = i % 5;
    fcprog::TrainConfig tc;
    tc.max_epochs = 1;
    tc.window = 10;
    tc.batch_size = 32;
    tc.seed = 1;
    for (auto _ : state) {
        auto net = fcprog::make_gru_network(5, static_cast<std::size_t>(state.range(0)),
                                            static_cast<std::size_t>(state.range(1)), 1);
        auto result = fcprog::train(net, symbols, tc);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_GruTrainEpoch)->Args({1, 20})->Args({2, 50});

}  // namespace

BENCHMARK_MAIN();
