#include <benchmark/benchmark.h>

#include "hfsurgery/catalog.hpp"
#include "hfsurgery/obstructions.hpp"
#include "hfsurgery/surgery.hpp"

using namespace hfs;

namespace {

const KnotComplex& twist_knot() {
  static KnotComplex k = *get_record("5_2").complex;
  return k;
}

void BM_APlusHomology(benchmark::State& state) {
  const auto& k = twist_knot();
  long n = state.range(0);
  for (auto _ : state) {
    auto m = a_plus_homology(k, 0, n);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_APlusHomology)->Arg(8)->Arg(16)->Arg(32);

void BM_MappingConeIntegral(benchmark::State& state) {
  const auto& k = twist_knot();
  long p = state.range(0);
  for (auto _ : state) {
    for (long i = 0; i < p; ++i) {
      auto m = mapping_cone(k, {p, 1}, i);
      benchmark::DoNotOptimize(m);
    }
  }
}
BENCHMARK(BM_MappingConeIntegral)->Arg(1)->Arg(3)->Arg(7);

void BM_MappingConeSmallSlope(benchmark::State& state) {
  const auto& k = twist_knot();
  long q = state.range(0);
  for (auto _ : state) {
    auto m = mapping_cone(k, {1, q}, 0);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_MappingConeSmallSlope)->Arg(2)->Arg(5)->Arg(9);

void BM_ProfileSweep(benchmark::State& state) {
  auto rec = get_record("5_2");
  for (auto _ : state) {
    auto p = r0_nu_hat(rec);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_ProfileSweep);

void BM_LensRecursion(benchmark::State& state) {
  for (auto _ : state) {
    Rational total(0);
    for (long i = 0; i < 89; ++i) total += lens_d(89, 55, i);
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_LensRecursion);

}  // namespace

BENCHMARK_MAIN();
