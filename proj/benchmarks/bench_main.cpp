#include "fracbeam/fd_oracle.hpp"
#include "fracbeam/spectral_analysis.hpp"
#include "fracbeam/time_evolution.hpp"

#include <benchmark/benchmark.h>

using namespace fracbeam;

namespace {

PhysicalParams params(int n) {
  PhysicalParams p;
  p.tau = 0.5;
  p.sigma = 0.75;
  p.n_modes = n;
  return p;
}

void BM_Assemble(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ModalModel::assemble(p));
}
BENCHMARK(BM_Assemble)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ResolventNorm(benchmark::State& state) {
  const auto model = ModalModel::assemble(params(static_cast<int>(state.range(0))));
  double lambda = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(resolvent_norm(model, lambda));
    lambda *= 1.01;
  }
}
BENCHMARK(BM_ResolventNorm)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
  const auto model = ModalModel::assemble(params(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(compute_spectrum(model));
}
BENCHMARK(BM_Spectrum)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Propagator(benchmark::State& state) {
  const auto model = ModalModel::assemble(params(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(propagator(model, 0.05));
}
BENCHMARK(BM_Propagator)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_FdSmallestEigenvalues(benchmark::State& state) {
  const auto fd = assemble_fd_generator(params(0), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(smallest_eigenvalues(fd.generator, 10));
}
BENCHMARK(BM_FdSmallestEigenvalues)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
