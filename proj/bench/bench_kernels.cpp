#include <benchmark/benchmark.h>

#include "hyptess/geometry.hpp"
#include "hyptess/model.hpp"
#include "hyptess/parallel.hpp"
#include "hyptess/sampler.hpp"

namespace {

hyptess::ProcessSample make_sample(int dim, double radius) {
  auto dist = hyptess::DirectionalDistribution::isotropic(dim);
  return hyptess::sample_process(dist, hyptess::ProcessIntensity{1.0}, radius, 42);
}

void extract_serial_d2(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  auto sample = make_sample(2, r);
  for (auto _ : state) {
    auto cells = hyptess::extract_cells(sample, r, 1);
    benchmark::DoNotOptimize(cells.size());
  }
}
BENCHMARK(extract_serial_d2)->Arg(10)->Arg(20)->Arg(40);

void extract_parallel_d2(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  auto sample = make_sample(2, r);
  const int threads = hyptess::hardware_threads();
  for (auto _ : state) {
    auto cells = hyptess::extract_cells(sample, r, threads);
    benchmark::DoNotOptimize(cells.size());
  }
}
BENCHMARK(extract_parallel_d2)->Arg(10)->Arg(20)->Arg(40);

void extract_serial_d3(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  auto sample = make_sample(3, r);
  for (auto _ : state) {
    auto cells = hyptess::extract_cells(sample, r, 1);
    benchmark::DoNotOptimize(cells.size());
  }
}
BENCHMARK(extract_serial_d3)->Arg(6)->Arg(10);

void extract_parallel_d3(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  auto sample = make_sample(3, r);
  const int threads = hyptess::hardware_threads();
  for (auto _ : state) {
    auto cells = hyptess::extract_cells(sample, r, threads);
    benchmark::DoNotOptimize(cells.size());
  }
}
BENCHMARK(extract_parallel_d3)->Arg(6)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
