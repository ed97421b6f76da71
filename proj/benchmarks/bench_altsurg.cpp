#include <benchmark/benchmark.h>

#include "altsurg/cmlattice.hpp"
#include "altsurg/graphlat.hpp"
#include "altsurg/recovery.hpp"

using namespace altsurg;

namespace {

void BM_CharNormProfile(benchmark::State& state) {
  IntVector rho(static_cast<std::size_t>(state.range(0)), 1);
  rho.front() = 5;
  rho[1] = 4;
  for (auto _ : state) benchmark::DoNotOptimize(char_norm_profile(rho));
}
BENCHMARK(BM_CharNormProfile)->Arg(4)->Arg(8)->Arg(12);

void BM_RecoverRho(benchmark::State& state) {
  const IntVector rho{5, 4, 3, 2, 2, 1, 1};
  const VSequence v(char_norm_profile(rho));
  for (auto _ : state) benchmark::DoNotOptimize(recover_rho(v, 60, 6));
}
BENCHMARK(BM_RecoverRho);

void BM_SuperbaseL20(benchmark::State& state) {
  const auto l = build_integral(ChangemakerVector(IntVector{1, 1, 1, 2, 2, 3}));
  for (auto _ : state) benchmark::DoNotOptimize(find_obtuse_superbase(l, state.range(0)));
}
BENCHMARK(BM_SuperbaseL20)->Arg(8)->Arg(10);

void BM_SuperbaseL30(benchmark::State& state) {
  const auto l = build_changemaker_lattice(Rational(30), StableCoefficients({4, 2, 2, 2}));
  for (auto _ : state) benchmark::DoNotOptimize(find_obtuse_superbase(l, 10));
}
BENCHMARK(BM_SuperbaseL30);

void BM_Irreducibles(benchmark::State& state) {
  const Multigraph k5(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  const GramMatrix g = laplacian_lattice(k5, 0).gram;
  for (auto _ : state) benchmark::DoNotOptimize(irreducibles(g, state.range(0)));
}
BENCHMARK(BM_Irreducibles)->Arg(4)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
