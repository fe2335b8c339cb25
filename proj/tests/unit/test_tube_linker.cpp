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
#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "test_util.hpp"
#include "vidseg/errors.hpp"
#include "vidseg/tube_linker.hpp"

namespace vidseg {
namespace {

Detection det(int frame, double score, BoundingBox box = BoundingBox(0, 0, 4, 4),
              std::string cat = "car") {
  return {frame, box, score, std::move(cat)};
}

// Every source-to-sink path, summed left to right, best under the same order.
LinkPath enumerate_best(const LinkGraph& g) {
  LinkPath best;
  bool have = false;
  std::vector<int> path;
  std::function<void(int, double)> walk = [&](int v, double score) {
    path.push_back(v);
    const LinkPath cand{path, score};
    auto beats = [&] {
      if (!have) return true;
      if (cand.score != best.score) return cand.score > best.score;
      const int fa = g.node(cand.nodes.front()).frame, fb = g.node(best.nodes.front()).frame;
      if (fa != fb) return fa < fb;
      if (cand.nodes.size() != best.nodes.size()) return cand.nodes.size() > best.nodes.size();
      return cand.nodes < best.nodes;
    };
    if (beats()) best = cand, have = true;
    for (const auto& e : g.out_edges(v)) walk(e.to, score + e.weight);
    path.pop_back();
  };
  for (int i = 0; i < g.size(); ++i) walk(i, g.source_weight(i));
  return best;
}

TEST(LinkGraph, SortsByFrameStably) {
  LinkGraph g({det(3, 0.1), det(1, 0.2), det(3, 0.3), det(0, 0.4)});
  ASSERT_EQ(g.size(), 4);
  EXPECT_EQ(g.input_index(0), 3);
  EXPECT_EQ(g.input_index(1), 1);
  EXPECT_EQ(g.input_index(2), 0);
  EXPECT_EQ(g.input_index(3), 2);
}

TEST(LinkGraph, RejectsBackwardEdgesAndDropsNegativeInfinity) {
  LinkGraph g({det(0, 1), det(1, 1), det(1, 1)});
  EXPECT_THROW(g.add_edge(1, 0, 1.0), InputError);
  EXPECT_THROW(g.add_edge(1, 2, 1.0), InputError);
  g.add_edge(0, 1, ExtReal::neg_inf());
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(LongestPath, EmptyGraph) {
  const LinkPath p = longest_path(LinkGraph{});
  EXPECT_TRUE(p.nodes.empty());
  EXPECT_EQ(p.score, 0.0);
}

TEST(LongestPath, ChainSumsSourceAndEdges) {
  LinkGraph g({det(0, 0.5), det(1, 0.9), det(2, 0.9)});
  g.add_edge(0, 1, 0.75);
  g.add_edge(1, 2, 0.25);
  const LinkPath p = longest_path(g);
  EXPECT_EQ(p.nodes, (std::vector<int>{0, 1, 2}));
  EXPECT_DOUBLE_EQ(p.score, 1.5);
}

TEST(LongestPath, SkipsNegativeInfinityEdges) {
  LinkGraph g({det(0, 1.0), det(1, 0.5)});
  g.add_edge(0, 1, ExtReal::neg_inf());
  const LinkPath p = longest_path(g);
  EXPECT_EQ(p.nodes, (std::vector<int>{0}));
  EXPECT_DOUBLE_EQ(p.score, 1.0);
}

TEST(LongestPath, TiesPreferEarlierStartThenMoreNodes) {
  LinkGraph g({det(0, 1.0), det(1, 1.0)});
  EXPECT_EQ(longest_path(g).nodes, (std::vector<int>{0}));
  g.add_edge(0, 1, 0.0);
  EXPECT_EQ(longest_path(g).nodes, (std::vector<int>{0, 1}));
}

TEST(LongestPath, TiesFallBackToLexicographicOrder) {
  LinkGraph g({det(0, 1.0), det(0, 1.0)});
  EXPECT_EQ(longest_path(g).nodes, (std::vector<int>{0}));
}

TEST(LongestPath, InactiveNodesAreSkipped) {
  LinkGraph g({det(0, 1.0), det(1, 1.0), det(2, 1.0)});
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  g.add_edge(0, 2, 0.5);
  const std::vector<char> active{1, 0, 1};
  const LinkPath p = longest_path(g, active);
  EXPECT_EQ(p.nodes, (std::vector<int>{0, 2}));
  EXPECT_DOUBLE_EQ(p.score, 1.5);
}

TEST(LongestPath, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    std::vector<Detection> dets;
    for (int i = 0; i < n; ++i) dets.push_back(det(static_cast<int>(rng() % 8), w(rng)));
    LinkGraph g(dets);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (g.node(i).frame < g.node(j).frame && w(rng) < 0.6)
          g.add_edge(i, j, w(rng) < 0.2 ? ExtReal::neg_inf() : ExtReal(w(rng)));
    const LinkPath got = longest_path(g);
    const LinkPath want = enumerate_best(g);
    EXPECT_EQ(got.score, want.score) << "trial " << trial;
    EXPECT_EQ(got.nodes, want.nodes) << "trial " << trial;
  }
}

TEST(PathToTube, MarksGapFramesMissing) {
  LinkGraph g({det(2, 0.5, BoundingBox(0, 0, 4, 4)), det(5, 0.5, BoundingBox(3, 0, 7, 4))});
  g.add_edge(0, 1, 0.5);
  const Tube t = path_to_tube(g, longest_path(g));
  EXPECT_EQ(t.first_frame, 2);
  EXPECT_EQ(t.last_frame(), 5);
  EXPECT_EQ(t.provenance,
            (std::vector<Provenance>{Provenance::kDetected, Provenance::kMissing,
                                     Provenance::kMissing, Provenance::kDetected}));
  EXPECT_FALSE(t.is_dense());
  EXPECT_EQ(t.detection_ids, (std::vector<int>{0, 1}));
}

TEST(ExtractTubes, StopsBelowThresholdAndRemovesUsedDetections) {
  LinkGraph g({det(0, 0.9), det(1, 0.9), det(0, 0.6), det(1, 0.3)});
  // nodes after sorting: 0 (f0,.9) 1 (f0,.6) 2 (f1,.9) 3 (f1,.3)
  g.add_edge(0, 2, 0.9);
  g.add_edge(1, 3, 0.3);
  g.add_edge(0, 3, 0.3);
  LinkerConfig cfg;
  const auto tubes = extract_tubes(g, cfg);
  ASSERT_EQ(tubes.size(), 1u);
  EXPECT_DOUBLE_EQ(tubes[0].path_score, 1.8);
  cfg.tube_threshold = 0.5;
  const auto more = extract_tubes(g, cfg);
  ASSERT_EQ(more.size(), 2u);
  EXPECT_DOUBLE_EQ(more[1].path_score, 0.9);
  cfg.max_tubes = 1;
  EXPECT_EQ(extract_tubes(g, cfg).size(), 1u);
}

TEST(ExtractTubes, SeparatesCategories) {
  std::vector<Image> frames(4, testing::noise_image(40, 30, 1));
  std::vector<FlowField> flows(3, FlowField(40, 30));
  std::vector<Detection> dets;
  for (int t = 0; t < 4; ++t) {
    dets.push_back(det(t, 0.9, BoundingBox(2, 2, 12, 12), "car"));
    dets.push_back(det(t, 0.9, BoundingBox(20, 10, 30, 20), "dog"));
  }
  const SimilarityContext ctx(frames, flows);
  const auto tubes = extract_tubes(dets, ctx, {}, {});
  ASSERT_EQ(tubes.size(), 2u);
  for (const auto& t : tubes) {
    EXPECT_EQ(t.length(), 4);
    EXPECT_TRUE(t.is_dense());
  }
  EXPECT_NE(tubes[0].category, tubes[1].category);
}

TEST(InterpolateTube, FillsGapsByTracking) {
  const Image base = testing::noise_image(64, 48, 3);
  std::vector<Image> frames;
  for (int t = 0; t < 6; ++t) frames.push_back(testing::shifted(base, 2 * t, t));
  Tube tube;
  tube.category = "car";
  tube.first_frame = 0;
  const BoundingBox b0(10, 10, 22, 20);
  for (int t = 0; t < 6; ++t) {
    const bool detected = t == 0 || t == 2 || t == 5;
    tube.boxes.push_back(detected ? b0.translated(2 * t, t) : b0);
    tube.provenance.push_back(detected ? Provenance::kDetected : Provenance::kMissing);
  }
  const Tube out = interpolate_tube(tube, frames, 8);
  ASSERT_TRUE(out.is_dense());
  for (int t = 0; t < 6; ++t) {
    EXPECT_EQ(out.boxes[t], b0.translated(2 * t, t)) << "frame " << t;
    const bool detected = t == 0 || t == 2 || t == 5;
    EXPECT_EQ(out.provenance[t], detected ? Provenance::kDetected : Provenance::kInterpolated);
  }
}

Tube tube_of(int first, std::vector<BoundingBox> boxes, double score = 1.0,
             std::string cat = "car") {
  Tube t;
  t.category = std::move(cat);
  t.first_frame = first;
  t.provenance.assign(boxes.size(), Provenance::kDetected);
  t.boxes = std::move(boxes);
  t.path_score = score;
  return t;
}

TEST(VolumetricIou, HandComputed) {
  const Tube a = tube_of(0, {BoundingBox(0, 0, 10, 10), BoundingBox(0, 0, 10, 10)});
  const Tube b = tube_of(1, {BoundingBox(5, 0, 15, 10), BoundingBox(0, 0, 10, 10)});
  // frame 0: only a (union 100); frame 1: 50 / 150; frame 2: only b (100).
  EXPECT_NEAR(volumetric_iou(a, b), 50.0 / 350.0, 1e-12);
  EXPECT_DOUBLE_EQ(volumetric_iou(a, a), 1.0);
}

TEST(TubeNms, ExactlyHalfKeepsBoth) {
  const Tube a = tube_of(0, {BoundingBox(0, 0, 10, 10)});
  const Tube b = tube_of(0, {BoundingBox(0, 0, 10, 20)});
  EXPECT_DOUBLE_EQ(volumetric_iou(a, b), 0.5);
  std::vector<Tube> tubes{a, b};
  EXPECT_EQ(tube_nms(tubes).size(), 2u);
}

TEST(TubeNms, LongerTubeWinsThenHigherScore) {
  const BoundingBox b(0, 0, 10, 10);
  const Tube shorter = tube_of(0, {b, b}, 5.0);
  const Tube longer = tube_of(0, {b, b, b}, 1.0);
  std::vector<Tube> tubes{shorter, longer};
  auto kept = tube_nms(tubes);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].length(), 3);

  const Tube low = tube_of(0, {BoundingBox(0, 0, 10, 10)}, 1.0);
  const Tube high = tube_of(0, {BoundingBox(0, 0, 10, 11)}, 2.0);
  tubes = {low, high};
  kept = tube_nms(tubes);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].path_score, 2.0);
}

TEST(TubeNms, DifferentCategoriesNeverSuppress) {
  std::vector<Tube> tubes{tube_of(0, {BoundingBox(0, 0, 10, 10)}, 1.0, "car"),
                          tube_of(0, {BoundingBox(0, 0, 10, 10)}, 1.0, "dog")};
  EXPECT_EQ(tube_nms(tubes).size(), 2u);
}

TEST(LinkerConfig, Validation) {
  LinkerConfig cfg;
  cfg.lookahead = 0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.tube_threshold = -1;
  EXPECT_THROW(cfg.validate(), InputError);
}

}  // namespace
}  // namespace vidseg
