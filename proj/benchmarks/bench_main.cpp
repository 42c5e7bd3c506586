#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "splitnorm/estimator.hpp"
#include "splitnorm/numeric_norm.hpp"
#include "splitnorm/profile.hpp"
#include "splitnorm/split.hpp"

using namespace splitnorm;

namespace {

Rat q(long n, long d = 1) { return ratio(n, d); }

PiecewisePoly indicator(const Rat& a, const Rat& b) {
    return PiecewisePoly::on_interval(a, b, Poly({GRat(q(1))}));
}

// A staircase of k nested indicators centred at 0.
PiecewisePoly staircase(int k) {
    PiecewisePoly f;
    for (int j = 1; j <= k; ++j) f += indicator(q(-j, 2), q(j, 2));
    return f;
}

void BM_Convolve(benchmark::State& state) {
    PiecewisePoly f = staircase(static_cast<int>(state.range(0)));
    SplitPair s = split(f);
    for (auto _ : state) benchmark::DoNotOptimize(convolve(s.plus, reflect(s.minus)));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Convolve)->RangeMultiplier(2)->Range(2, 32)->Complexity();

void BM_NormProfile(benchmark::State& state) {
    PiecewisePoly f = staircase(6);
    int p = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(norm_profile(f, p));
}
BENCHMARK(BM_NormProfile)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_NormNumeric(benchmark::State& state) {
    PiecewisePoly f = indicator(q(-1), q(1));
    double target = 1.0;
    for (int i = 0; i < state.range(0); ++i) target /= 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(norm_numeric(f, 3.0, 1.0, target));
}
BENCHMARK(BM_NormNumeric)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_DiscreteQuotient(benchmark::State& state) {
    std::size_t N = static_cast<std::size_t>(state.range(0));
    DiscreteMultiplier m = half_line_multiplier(N, 8.0);
    std::vector<std::complex<double>> f(N);
    for (std::size_t i = 0; i < N; ++i) f[i] = {1.0 / (1.0 + static_cast<double>(i % 17)), 0.0};
    for (auto _ : state) benchmark::DoNotOptimize(discrete_quotient(m, f, 4.0));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DiscreteQuotient)->RangeMultiplier(4)->Range(1 << 8, 1 << 14)->Complexity(benchmark::oNLogN);

void BM_EstimateLower(benchmark::State& state) {
    DiscreteMultiplier m = half_line_multiplier(1 << 10, 8.0);
    EstimateOptions options;
    options.iterations = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(estimate_lower(m, 4.0, options));
}
BENCHMARK(BM_EstimateLower)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
