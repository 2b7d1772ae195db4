// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include <cmath>

#include "isosym/harness.hpp"
#include "isosym/matrix.hpp"

using namespace isosym;

namespace {

std::pair<ComplexMatrix, ComplexMatrix> operands(std::size_t n) {
    ComplexMatrix a(n, n);
    ComplexMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double x = static_cast<double>(i * n + j);
            a(i, j) = Scalar(std::sin(x), std::cos(3.0 * x));
            b(i, j) = Scalar(std::cos(x), std::sin(5.0 * x));
        }
    }
    return {a, b};
}

void bm_matmul(benchmark::State& state) {
    const auto [a, b] = operands(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(matmul(a, b));
    }
}

void bm_matmul_reference(benchmark::State& state) {
    const auto [a, b] = operands(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(matmul_reference(a, b));
    }
}

SuiteConfig suite_config(std::int64_t index) {
    SuiteConfig cfg;
    cfg.suite = all_suites()[static_cast<std::size_t>(index)];
    cfg.trials = 50;
    cfg.seed = 3;
    return cfg;
}

void bm_run_suite(benchmark::State& state) {
    const auto cfg = suite_config(state.range(0));
    state.SetLabel(std::string(to_string(cfg.suite)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_suite(cfg));
    }
}

void bm_run_suite_serial(benchmark::State& state) {
    const auto cfg = suite_config(state.range(0));
    state.SetLabel(std::string(to_string(cfg.suite)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_suite_serial(cfg));
    }
}

} // namespace

BENCHMARK(bm_matmul)->RangeMultiplier(2)->Range(8, 128);
BENCHMARK(bm_matmul_reference)->RangeMultiplier(2)->Range(8, 128);
BENCHMARK(bm_run_suite)->DenseRange(0, 9)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_run_suite_serial)->DenseRange(0, 9)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
