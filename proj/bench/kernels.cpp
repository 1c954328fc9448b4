#include <benchmark/benchmark.h>

#include "phasekit/builtin.hpp"
#include "phasekit/numeric.hpp"
#include "phasekit/resolve.hpp"
#include "phasekit/verify.hpp"

using namespace phasekit;

namespace {

const AtlasSpec& atlas() {
  static const AtlasSpec a = theorem31_atlas().with_params({{"epsilon", 3}});
  return a;
}

void BM_UniquenessParallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(uniqueness_search(atlas()).rank);
}

void BM_UniquenessSerial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(uniqueness_search_serial(atlas()).rank);
}

struct Grid {
  std::vector<GaussQ> sig, eps, bs;
};

const Grid& grid() {
  static const Grid g{{GaussQ(1, 3), 1, 2, -1, GaussQ(1, 2)}, {3, -3, 1, 2, GaussQ(-1, 2)}, {0, 2, 1, -1, 5}};
  return g;
}

void BM_GridParallel(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(grid_check(grid().sig, grid().eps, grid().bs).resolvable);
}

void BM_GridSerial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(grid_check_serial(grid().sig, grid().eps, grid().bs).resolvable);
}

std::vector<CState> starts(std::size_t n) {
  std::vector<CState> x0s;
  for (std::size_t k = 0; k < n; ++k) x0s.push_back({0.1 * static_cast<double>(k), 0.2, cplx(0.0, 0.05)});
  return x0s;
}

void BM_BatchParallel(benchmark::State& s) {
  const VField v = builtin_system("system31").field();
  const auto x0s = starts(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(integrate_batch(v, x0s, 0, 1, 1e-3, 1000).size());
}

void BM_BatchSerial(benchmark::State& s) {
  const VField v = builtin_system("system31").field();
  const auto x0s = starts(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(integrate_batch_serial(v, x0s, 0, 1, 1e-3, 1000).size());
}

}  // namespace

BENCHMARK(BM_UniquenessParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UniquenessSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
