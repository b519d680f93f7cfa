#include <benchmark/benchmark.h>

#include "displaylab/flex.hpp"
#include "displaylab/newton.hpp"
#include "testutil.hpp"

using namespace dlab;

// Galois ring path against the universal polynomials, same operands
static void BM_WittMul(benchmark::State& st) {
    const BaseRing* K = BaseRing::finite_field(3, static_cast<int>(st.range(1)));
    const int n = static_cast<int>(st.range(0));
    Rng rng(1);
    auto a = dlt::random_witt(K, n, rng), b = dlt::random_witt(K, n, rng);
    for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_WittMul)->ArgsProduct({{2, 4, 8}, {1, 4}});

static void BM_WittMulPoly(benchmark::State& st) {
    const BaseRing* K = BaseRing::finite_field(3, static_cast<int>(st.range(1)));
    const int n = static_cast<int>(st.range(0));
    Rng rng(1);
    auto a = dlt::random_witt(K, n, rng), b = dlt::random_witt(K, n, rng);
    for (auto _ : st) benchmark::DoNotOptimize(witt_mul_poly(a, b));
}
BENCHMARK(BM_WittMulPoly)->ArgsProduct({{2, 4}, {1, 4}});

// not a finite field, so the generic component path
static void BM_WittMulDual(benchmark::State& st) {
    const BaseRing* D = BaseRing::dual(BaseRing::finite_field(5, 1));
    Rng rng(2);
    auto a = dlt::random_witt(D, 3, rng), b = dlt::random_witt(D, 3, rng);
    for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_WittMulDual);

static void BM_NewtonPoint(benchmark::State& st) {
    const int h = static_cast<int>(st.range(0));
    Rng rng(3);
    // level 8 so the constant term survives for h = 6
    auto U = dlt::random_display(Shape::linear(h, h / 2), BaseRing::finite_field(3, 2), 8, rng);
    for (auto _ : st) benchmark::DoNotOptimize(newton_point(U));
}
BENCHMARK(BM_NewtonPoint)->DenseRange(2, 6, 2);

static void BM_BruteForceIsoms(benchmark::State& st) {
    Rng rng(4);
    const BaseRing* F3 = BaseRing::finite_field(3, 1);
    auto U = dlt::random_display(Shape::linear(2, 1), F3, 1, rng);
    for (auto _ : st) benchmark::DoNotOptimize(brute_force_isoms(U, U));
}
BENCHMARK(BM_BruteForceIsoms)->Unit(benchmark::kMillisecond);

static void BM_FlexDisplay(benchmark::State& st) {
    Rng rng(5);
    const Shape s = Shape::graded(2, {1, 0});
    WeightProfile P;
    P.a = {0, 0};
    P.b = {1, 0};
    FlexSpec sp{Multidegree{2, {0, 2}}, Gauge{2, false, {0, 4}}, P};
    auto U = dlt::random_display(s, BaseRing::finite_field(3, 2), 4, rng);
    for (auto _ : st) benchmark::DoNotOptimize(flex_display(sp, U));
}
BENCHMARK(BM_FlexDisplay);
BENCHMARK_MAIN();
