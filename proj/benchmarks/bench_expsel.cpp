#include <benchmark/benchmark.h>

#include <array>
#include <cmath>

#include "expsel/expsel.hpp"

using namespace expsel;

namespace {

void BM_McRisk(benchmark::State& state) {
    const auto pop = PopulationSet::from_scales(5, std::array{1.0, 0.6});
    const auto spec = EstimatorSpec::n2(5);
    const auto reps = static_cast<std::uint64_t>(state.range(0));
    const ExecutionOptions exec{static_cast<unsigned>(state.range(1))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc_risk(spec, pop, reps, RngSpec{1, 0}, exec));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(reps));
}
BENCHMARK(BM_McRisk)->Args({5000, 1})->Args({100000, 1})->Args({100000, 0})->UseRealTime();

void BM_McRisksTableColumns(benchmark::State& state) {
    const int n = 5;
    const auto pop = PopulationSet::from_scales(n, std::array{0.3, 0.2});
    const std::vector<EstimatorSpec> specs{EstimatorSpec::n1(n), EstimatorSpec::n2(n),
                                           EstimatorSpec::n2_improved(n, 2), EstimatorSpec::ml(n),
                                           EstimatorSpec::ml_improved(n, 2)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc_risks(specs, pop, 5000, RngSpec{1, 0}, {1}));
    }
}
BENCHMARK(BM_McRisksTableColumns);

void BM_Digamma(benchmark::State& state) {
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(digamma(x));
        x = x < 50.0 ? x + 0.37 : 0.5;
    }
}
BENCHMARK(BM_Digamma);

void BM_LnGamma(benchmark::State& state) {
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ln_gamma(x));
        x = x < 50.0 ? x + 0.37 : 0.5;
    }
}
BENCHMARK(BM_LnGamma);

void BM_RegIncBeta(benchmark::State& state) {
    const double a = static_cast<double>(state.range(0));
    double x = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(reg_inc_beta(x, a + 0.5, a - 0.25));
        x = x < 0.98 ? x + 0.013 : 0.01;
    }
}
BENCHMARK(BM_RegIncBeta)->Arg(5)->Arg(50);

void BM_GammaCdf(benchmark::State& state) {
    double y = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamma_cdf(y, 1.0, 8));
        y = y < 30.0 ? y + 0.21 : 0.1;
    }
}
BENCHMARK(BM_GammaCdf);

void BM_HOfQ(benchmark::State& state) {
    double q = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(h_of_q(q, 8));
        q = q < 1e5 ? q * 1.7 : 1.0;
    }
}
BENCHMARK(BM_HOfQ);

void BM_AdaptiveQuadSemiInfinite(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            adaptive_quad([](double t) { return std::log(t) * std::exp(-t) * t * t; }, 0.0,
                          kInfinity));
    }
}
BENCHMARK(BM_AdaptiveQuadSemiInfinite);

void BM_ExactRiskK2(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_risk_scaleinv_k2(4.0, {1.0, 2.0}, 5));
    }
}
BENCHMARK(BM_ExactRiskK2);

}  // namespace

BENCHMARK_MAIN();
