// Parallel kernels against their serial references.
//
//   build/bench/bench_kernels --benchmark_min_time=0.5

#include <benchmark/benchmark.h>

#include "ipstele/ips.hpp"
#include "ipstele/reference.hpp"
#include "ipstele/teleport.hpp"

using namespace ipstele;

namespace {

const DensityOperator& resource(double x) {
  static const DensityOperator r03 = [] {
    const IpsParams p = IpsParams::effective(0.3, 0.9);
    return ips_state_direct(p, ips_truncation(p));
  }();
  static const DensityOperator r05 = [] {
    const IpsParams p = IpsParams::effective(0.5, 0.9);
    return ips_state_direct(p, ips_truncation(p));
  }();
  return x < 0.4 ? r03 : r05;
}

void BM_QuadratureKernel(benchmark::State& state) {
  const DensityOperator& rho = resource(state.range(0) / 10.0);
  const QuadratureGrid g = default_grid(rho, 0.0, 20, 32);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_teleportation(rho, 0.0, g).fidelity);
  state.counters["cutoff"] = rho.trunc().dim(0);
}

void BM_QuadratureSerial(benchmark::State& state) {
  const DensityOperator& rho = resource(state.range(0) / 10.0);
  const QuadratureGrid g = default_grid(rho, 0.0, 20, 32);
  for (auto _ : state) benchmark::DoNotOptimize(reference::integrate_teleportation(rho, 0.0, g).fidelity);
  state.counters["cutoff"] = rho.trunc().dim(0);
}

void BM_MomentsKernel(benchmark::State& state) {
  const IpsParams p = IpsParams::effective(0.9, 0.9);
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ips_moments(p, d).var_diff);
}

void BM_MomentsSerial(benchmark::State& state) {
  const IpsParams p = IpsParams::effective(0.9, 0.9);
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::ips_moments(p, d).var_diff);
}

}  // namespace

BENCHMARK(BM_QuadratureKernel)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadratureSerial)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MomentsKernel)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MomentsSerial)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
