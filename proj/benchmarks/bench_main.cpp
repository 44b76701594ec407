#include <benchmark/benchmark.h>

#include "disperse/box_finder.hpp"
#include "disperse/construction.hpp"
#include "disperse/derandomizer.hpp"
#include "disperse/oracle.hpp"
#include "disperse/toroidal.hpp"

using namespace disperse;

namespace {

void BM_ExactOracle2d(benchmark::State& state) {
  PointSet P = random_points(static_cast<std::size_t>(state.range(0)), 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(largest_empty_box<Rational>(P).volume);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactOracle2d)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond)->Complexity();

void BM_FloatOracle3d(benchmark::State& state) {
  PointSet P = random_points(static_cast<std::size_t>(state.range(0)), 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(largest_empty_box<double>(P).volume);
}
BENCHMARK(BM_FloatOracle3d)->RangeMultiplier(2)->Range(32, 128)->Unit(benchmark::kMillisecond);

void BM_FindEmptyBox(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(1));
  PointSet P = random_points(static_cast<std::size_t>(state.range(0)), d, 3);
  auto params = default_finder_params(weight_presets::simple_default(d), d, 4);
  for (auto _ : state) benchmark::DoNotOptimize(find_empty_box(P, params).volume);
}
BENCHMARK(BM_FindEmptyBox)->Args({1000, 2})->Args({10000, 2})->Args({10000, 5})->Unit(benchmark::kMillisecond);

void BM_Stage1Desk(benchmark::State& state) {
  auto params = ConstructionParams::desk(2);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(stage1(432, params, ++seed).points.size());
}
BENCHMARK(BM_Stage1Desk)->Unit(benchmark::kMillisecond);

void BM_PreprocessToy(benchmark::State& state) {
  auto params = ConstructionParams::toy();
  for (auto _ : state) benchmark::DoNotOptimize(preprocess(params).anchors.size());
}
BENCHMARK(BM_PreprocessToy)->Unit(benchmark::kMillisecond);

void BM_PreprocessDesk(benchmark::State& state) {
  auto params = ConstructionParams::desk(2);
  for (auto _ : state) benchmark::DoNotOptimize(preprocess(params).anchors.size());
}
BENCHMARK(BM_PreprocessDesk)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_BestShift(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  ToroidalBox<double> B;
  for (std::size_t i = 0; i < d; ++i) B.axes.push_back({0.1 * static_cast<double>(i % 10), 0.37});
  for (auto _ : state) benchmark::DoNotOptimize(best_shift(B).volume);
}
BENCHMARK(BM_BestShift)->Arg(2)->Arg(10)->Arg(100);

}  // namespace
BENCHMARK_MAIN();
