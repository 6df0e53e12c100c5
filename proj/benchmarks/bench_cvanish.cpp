#include "cvanish/matrixlab.hpp"
#include "cvanish/vanishing.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <string>

namespace {

using namespace cvanish;

const SpaceDescriptor& space(const char* name) {
  static std::map<std::string, SpaceDescriptor> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, Catalog{}.lookup(name)).first;
  return it->second;
}

void BM_CatalogEnumerate(benchmark::State& state) {
  CatalogFilter f;
  f.max_param = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Catalog{}.enumerate(f));
}
BENCHMARK(BM_CatalogEnumerate)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ExactChamberMax(benchmark::State& state) {
  const auto& s = space("SL(5,R)/SO(5)");
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sum_of_p_largest_max(s, p));
}
BENCHMARK(BM_ExactChamberMax)->Arg(1)->Arg(3)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_GridOracleRank2(benchmark::State& state) {
  const auto& s = space("Sp(2,R)/U(2)");
  for (auto _ : state) benchmark::DoNotOptimize(grid_oracle(s, 1, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GridOracleRank2)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_MaxVanishingDegree(benchmark::State& state) {
  const auto& s = space("E6(-26)/F4");
  for (auto _ : state) benchmark::DoNotOptimize(max_vanishing_degree(s));
}
BENCHMARK(BM_MaxVanishingDegree)->Unit(benchmark::kMillisecond);

void BM_HessianSpectrum(benchmark::State& state) {
  const auto& s = space("SU(2,3)/S(U(2)xU(3))");
  Eigen::VectorXd h(2);
  h << 0.8, 0.6;
  for (auto _ : state) benchmark::DoNotOptimize(hessian_spectrum(s, h, 1.0));
}
BENCHMARK(BM_HessianSpectrum);

void BM_CrossCheck(benchmark::State& state) {
  const auto& s = space(state.range(0) == 0 ? "SL(3,R)/SO(3)" : "Sp(3,R)/U(3)");
  for (auto _ : state) benchmark::DoNotOptimize(cross_check(s, 5));
}
BENCHMARK(BM_CrossCheck)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
