#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "shapebench/assign.hpp"
#include "shapebench/genset.hpp"
#include "shapebench/render.hpp"
#include "shapebench/textio.hpp"

using namespace shapebench;

static CostMatrix random_matrix(std::size_t m, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  CostMatrix c(m, n);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k < n; ++k)
      c.set(r, k, static_cast<double>(rng.uniform_int(0, 999)));
  return c;
}

static void BM_SolveLap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CostMatrix cost = random_matrix(n, n, 42);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lap_jv(cost));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveLap)->RangeMultiplier(2)->Range(4, 256)->Complexity();

static void BM_EditDistance(benchmark::State& state) {
  SplitSpec spec = builtin_split_spec("train");
  Rng rng(3);
  const SceneConfig scene = sample_scene(rng, spec, GenerationConfig{});
  const auto segs = serialize_segments(scene, OutputFormat::Sentence);
  const std::string a = segs.front(), b = segs.back();
  for (auto _ : state) benchmark::DoNotOptimize(edit_distance(a, b));
}
BENCHMARK(BM_EditDistance);

static void BM_SampleScene(benchmark::State& state) {
  const auto& names = builtin_split_names();
  const SplitSpec spec = builtin_split_spec(names[static_cast<std::size_t>(state.range(0))]);
  const GenerationConfig gen;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(seed++);
    benchmark::DoNotOptimize(sample_scene(rng, spec, gen));
  }
  state.SetLabel(spec.name);
}
BENCHMARK(BM_SampleScene)->DenseRange(0, 6);

static void BM_Rasterize(benchmark::State& state) {
  Rng rng(5);
  const SceneConfig scene =
      sample_scene(rng, builtin_split_spec("od_composition"), GenerationConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(rasterize(scene));
}
BENCHMARK(BM_Rasterize);

static void BM_ParsePrediction(benchmark::State& state) {
  const auto fmt = state.range(0) == 0 ? OutputFormat::Sentence : OutputFormat::Tuple;
  Rng rng(9);
  const SceneConfig scene =
      sample_scene(rng, builtin_split_spec("od_spatial"), GenerationConfig{});
  const std::string text = serialize_scene(scene, fmt);
  for (auto _ : state) benchmark::DoNotOptimize(parse_prediction(text, fmt));
  state.SetLabel(std::string(to_string(fmt)));
}
BENCHMARK(BM_ParsePrediction)->Arg(0)->Arg(1);

BENCHMARK_MAIN();
