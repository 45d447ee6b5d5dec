// Parallel kernels against their serial references, and the FFT path
// against the direct transform.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "willmore/generators.hpp"
#include "willmore/geometry.hpp"
#include "willmore/kernels.hpp"

using namespace willmore;

namespace {

struct Data {
  kernels::Extent extent;
  std::vector<double> u;
  std::vector<double> k;
  std::vector<double> out;
};

Data make_data(std::size_t n) {
  Data d{{n, n}, std::vector<double>(n * n), std::vector<double>(n * n), std::vector<double>(n * n)};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (std::size_t i = 0; i < n * n; ++i) {
    d.u[i] = dist(rng);
    d.k[i] = 40.0 * dist(rng);
  }
  return d;
}

void BM_power_sum_parallel(benchmark::State& s) {
  const Data d = make_data(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::curvature_power_sum(d.extent, d.k, d.u, 2.0, 0));
}

void BM_power_sum_serial(benchmark::State& s) {
  const Data d = make_data(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::serial::curvature_power_sum(d.extent, d.k, d.u, 2.0, 0));
}

void BM_weighted_sum_parallel(benchmark::State& s) {
  const Data d = make_data(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::weighted_sum(d.extent, d.k, d.u));
}

void BM_weighted_sum_serial(benchmark::State& s) {
  const Data d = make_data(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::serial::weighted_sum(d.extent, d.k, d.u));
}

void BM_curvature_parallel(benchmark::State& s) {
  Data d = make_data(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) {
    kernels::curvature_from_laplacian(d.u, d.k, d.out);
    benchmark::DoNotOptimize(d.out.data());
  }
}

void BM_curvature_serial(benchmark::State& s) {
  Data d = make_data(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) {
    kernels::serial::curvature_from_laplacian(d.u, d.k, d.out);
    benchmark::DoNotOptimize(d.out.data());
  }
}

ScalarField bench_field(int n) {
  const TorusGrid g(ModuliPoint::make(0.2, 1.3), n, n);
  return generators::random_trig_metric(g, 6, 0.5, 3).u();
}

void BM_dft_fftw(benchmark::State& s) {
  const ScalarField u = bench_field(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(dft(u).energy());
}

void BM_dft_reference(benchmark::State& s) {
  const ScalarField u = bench_field(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(reference_dft(u).energy());
}

void BM_systole(benchmark::State& s) {
  const ConformalTorusMetric m(bench_field(128));
  SystoleOptions o;
  o.parallel = s.range(0) != 0;
  for (auto _ : s) benchmark::DoNotOptimize(conformal_systole(m, o).length);
}

}  // namespace

BENCHMARK(BM_power_sum_parallel)->Arg(256)->Arg(1024);
BENCHMARK(BM_power_sum_serial)->Arg(256)->Arg(1024);
BENCHMARK(BM_weighted_sum_parallel)->Arg(256)->Arg(1024);
BENCHMARK(BM_weighted_sum_serial)->Arg(256)->Arg(1024);
BENCHMARK(BM_curvature_parallel)->Arg(256)->Arg(1024);
BENCHMARK(BM_curvature_serial)->Arg(256)->Arg(1024);
BENCHMARK(BM_dft_fftw)->Arg(16)->Arg(32);
BENCHMARK(BM_dft_reference)->Arg(16)->Arg(32);
BENCHMARK(BM_systole)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
