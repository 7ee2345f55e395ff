// Serial reference kernels against their OpenMP versions. On one core the two
// should tie; the gap opens with --benchmark_filter and OMP_NUM_THREADS > 1.

#include <benchmark/benchmark.h>

#include <cmath>

#include "bloch/hypgeo.hpp"
#include "bloch/operators.hpp"
#include "bloch/quad.hpp"

using namespace bloch;

namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "omp");
}

// Lemma 1 integrand at four points near the circle, one sweep of the disk.
void BM_IntegrateBatch(benchmark::State& state) {
  QuadratureSpec spec;
  spec.boundary_depth = static_cast<int>(state.range(1));
  const Complex zs[] = {{0.5, 0.0}, {0.0, 0.9}, {-0.97, 0.0}, {0.7, 0.7}};
  auto f = [&](Complex w, std::span<Complex> out) {
    const double weight = 1.0 - std::norm(w);
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = weight * std::pow(std::abs(1.0 - zs[k] * std::conj(w)), -4.0);
    }
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_disk_batch(f, 4, Region::disk(), spec, exec_of(state)));
  }
  label(state);
}
BENCHMARK(BM_IntegrateBatch)->ArgsProduct({{0, 1}, {10, 12}})->Unit(benchmark::kMillisecond);

// Partial cells dominate: a level set with a ragged boundary.
void BM_IntegrateLevelSet(benchmark::State& state) {
  QuadratureSpec spec;
  spec.boundary_depth = 10;
  const Region omega = level_set(blaschke_geometric(6), 0.1, DensityFlavor::FPrime);
  auto one = [](Complex) { return Complex{1.0, 0.0}; };
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_disk(one, omega, spec, exec_of(state)));
  }
  label(state);
}
BENCHMARK(BM_IntegrateLevelSet)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Discretize(benchmark::State& state) {
  QuadratureSpec spec;
  spec.boundary_depth = 10;
  const Region tent = TentRegion(BoundaryPoint(0.0), kDefaultAperture).region();
  for (auto _ : state) {
    benchmark::DoNotOptimize(discretize(tent, spec, exec_of(state)));
  }
  label(state);
}
BENCHMARK(BM_Discretize)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SupLattice(benchmark::State& state) {
  QuadratureSpec spec;
  spec.boundary_depth = 10;
  spec.sup_lattice_gap = 0.35;
  const FunctionModel f = blaschke_geometric(8);
  auto h = [&](Complex z) { return bloch_density(f, z, DensityFlavor::FPrime); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(sup_on_lattice(h, spec, exec_of(state)));
  }
  label(state);
}
BENCHMARK(BM_SupLattice)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
