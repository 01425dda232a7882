#include <benchmark/benchmark.h>

#include "gabor/experiments.hpp"
#include "gabor/frame.hpp"
#include "gabor/janssen.hpp"
#include "gabor/walnut.hpp"
#include "gabor/window.hpp"

namespace {

struct Setup {
  gabor::GaborSystem sys;
  gabor::GridFunction f;
};

// Grid of 64 samples per unit on [-8, 8); range(0) is log2(1/a).
Setup make(std::int64_t log_inv_a) {
  const gabor::Grid grid(1, 1.0 / 64.0, 8.0);
  const double a = 1.0 / static_cast<double>(1 << log_inv_a);
  auto g = gabor::sample_window(gabor::WindowSpec::gaussian(1.0, 3.0), grid);
  return {gabor::GaborSystem::self_dual(g, a, a), gabor::random_function(grid, 3.0, 1)};
}

void BM_Direct(benchmark::State& state) {
  const auto s = make(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gabor::apply_frame_direct(s.f, s.sys));
}

void BM_Walnut(benchmark::State& state) {
  const auto s = make(state.range(0));
  const gabor::CorrelationFamily family(s.sys);
  for (auto _ : state) benchmark::DoNotOptimize(gabor::walnut_apply(s.f, s.sys, family));
}

void BM_WalnutWithSetup(benchmark::State& state) {
  const auto s = make(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gabor::walnut_apply(s.f, s.sys));
}

void BM_Janssen(benchmark::State& state) {
  const auto s = make(state.range(0));
  const auto lattice = gabor::janssen_coefficients(s.sys, 8, 8);
  for (auto _ : state) benchmark::DoNotOptimize(gabor::janssen_apply(s.f, lattice));
}

void BM_JanssenCoefficients(benchmark::State& state) {
  const auto s = make(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gabor::janssen_coefficients(s.sys, 8, 8));
}

}  // namespace

BENCHMARK(BM_Direct)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Walnut)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WalnutWithSetup)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Janssen)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JanssenCoefficients)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
