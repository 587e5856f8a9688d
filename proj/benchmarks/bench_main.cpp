#include <benchmark/benchmark.h>

#include "specshift/hessian.hpp"
#include "specshift/inertia.hpp"
#include "specshift/nodal.hpp"
#include "specshift/random.hpp"
#include "specshift/schur.hpp"

namespace {

using namespace specshift;

PerturbationFamily family_of_size(int n, int k) {
  Rng rng(static_cast<unsigned>(n * 31 + k));
  FamilyDrawOptions opts;
  opts.min_n = opts.max_n = n;
  opts.min_k = opts.max_k = k;
  for (;;) {
    if (auto fam = draw_family(rng, opts)) return *fam;
  }
}

void BM_Inertia(benchmark::State& state) {
  Rng rng(1);
  const HermitianMatrix m = random_hermitian(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(inertia(m, 1e-8));
}
BENCHMARK(BM_Inertia)->RangeMultiplier(2)->Range(4, 128);

void BM_SchurComplement(benchmark::State& state) {
  Rng rng(2);
  const Index n = state.range(0);
  const HermitianMatrix m = random_hermitian(n, rng);
  const BlockPartition p = BlockPartition::leading(n / 2, n);
  for (auto _ : state) benchmark::DoNotOptimize(schur_complement(m, p, 1e-8));
}
BENCHMARK(BM_SchurComplement)->RangeMultiplier(2)->Range(4, 128);

void BM_HessianQ(benchmark::State& state) {
  const PerturbationFamily fam = family_of_size(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(hessian_Q(fam));
}
BENCHMARK(BM_HessianQ)->Args({8, 2})->Args({32, 4})->Args({64, 8});

void BM_SpectralShift(benchmark::State& state) {
  const PerturbationFamily fam = family_of_size(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_shift(fam));
}
BENCHMARK(BM_SpectralShift)->Arg(8)->Arg(32)->Arg(64);

void BM_NodalReports(benchmark::State& state) {
  Rng rng(3);
  GraphDrawOptions opts;
  opts.min_vertices = opts.max_vertices = static_cast<int>(state.range(0));
  opts.min_beta = 1;
  opts.max_beta = 3;
  const WeightedGraph g = random_connected_graph(rng, opts);
  MagneticFrame frame = spanning_tree(g);
  frame.alpha0 = random_alpha0(rng, frame.beta());
  frame.alpha = frame.alpha0;
  for (auto _ : state) benchmark::DoNotOptimize(nodal_reports(g, frame));
}
BENCHMARK(BM_NodalReports)->Arg(6)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
