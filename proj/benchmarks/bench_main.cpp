// Copyright 2026 The vidseg Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <benchmark/benchmark.h>

#include <random>

#include "vidseg/grabcut.hpp"
#include "vidseg/pipeline.hpp"
#include "vidseg/potts.hpp"
#include "vidseg/synthetic.hpp"
#include "vidseg/tube_linker.hpp"

namespace {

using namespace vidseg;

void BM_LongestPathChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  std::vector<Detection> dets;
  for (int f = 0; f < n; ++f) dets.push_back({f, BoundingBox(0, 0, 4, 4), w(rng), "car"});
  LinkGraph g(std::move(dets));
  for (int f = 0; f + 1 < n; ++f) g.add_edge(f, f + 1, w(rng));
  for (auto _ : state) benchmark::DoNotOptimize(longest_path(g));
  state.SetComplexityN(n);
}
BENCHMARK(BM_LongestPathChain)->RangeMultiplier(10)->Range(1000, 100000)->Complexity();

void BM_AlphaExpansionGrid(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const int n = side * side, k = 4;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  UnaryTable unary(n, k);
  for (int v = 0; v < n; ++v)
    for (int l = 0; l < k; ++l) unary(v, l) = u(rng);
  std::vector<PottsEdge> edges;
  for (int y = 0; y < side; ++y)
    for (int x = 0; x < side; ++x) {
      if (x + 1 < side) edges.push_back({y * side + x, y * side + x + 1, 1.0});
      if (y + 1 < side) edges.push_back({y * side + x, (y + 1) * side + x, 1.0});
    }
  const Labeling init = unary_argmin(unary);
  for (auto _ : state) benchmark::DoNotOptimize(solve_alpha_expansion(edges, unary, init));
  state.SetComplexityN(n);
}
BENCHMARK(BM_AlphaExpansionGrid)->Arg(16)->Arg(32)->Arg(64)->Complexity();

void BM_GrabcutBox(benchmark::State& state) {
  const SyntheticScene scene = synthesize_scene(preset_scene("single"));
  const BoundingBox box = *scene.boxes[0][0];
  const BoundingBox loose(box.x_min() - 3, box.y_min() - 3, box.x_max() + 3, box.y_max() + 3);
  for (auto _ : state) benchmark::DoNotOptimize(grabcut_box(scene.frames[0], loose, {}));
}
BENCHMARK(BM_GrabcutBox)->Unit(benchmark::kMillisecond);

void BM_PipelineFrames(benchmark::State& state) {
  SceneSpec spec = preset_scene("single");
  spec.frames = static_cast<int>(state.range(0));
  const SyntheticScene s = synthesize_scene(spec);
  const VideoInputs in{s.frames, s.flows, s.superpixels, s.detections};
  PipelineConfig cfg;
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(in, cfg));
  state.SetComplexityN(spec.frames);
}
BENCHMARK(BM_PipelineFrames)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond)->Complexity();

}  // namespace

BENCHMARK_MAIN();
