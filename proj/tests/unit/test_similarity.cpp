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

#include <cmath>
#include <random>
#include <set>

#include "test_util.hpp"
#include "vidseg/correlation.hpp"
#include "vidseg/errors.hpp"
#include "vidseg/histogram.hpp"
#include "vidseg/similarity.hpp"

namespace vidseg {
namespace {

Detection det(int frame, BoundingBox box, double score = 1.0, std::string cat = "car") {
  return {frame, box, score, std::move(cat)};
}

ColorHistogram hist(std::initializer_list<std::uint32_t> counts) {
  ColorHistogram h;
  int i = 0;
  for (auto c : counts) {
    h.bins[i++] = c;
    h.total += c;
  }
  return h;
}

TEST(SCategory, EqualAndDifferentLabels) {
  const BoundingBox b(0, 0, 4, 4);
  EXPECT_EQ(s_category(det(0, b, 1, "car"), det(1, b, 1, "car")), ExtReal(1.0));
  EXPECT_TRUE(s_category(det(0, b, 1, "car"), det(1, b, 1, "person")).is_neg_inf());
  EXPECT_EQ(s_category(det(0, b, 1, "bird"), det(1, b, 1, "bird")), ExtReal(1.0));
}

TEST(SVol, Examples) {
  EXPECT_NEAR(s_vol(BoundingBox(0, 0, 10, 10), BoundingBox(5, 5, 15, 15)), 1.0, 1e-9);
  EXPECT_NEAR(s_vol(BoundingBox(0, 0, 10, 10), BoundingBox(0, 0, 20, 10)), 0.5, 1e-9);
  EXPECT_NEAR(s_vol(BoundingBox(0, 0, 5, 10), BoundingBox(0, 0, 20, 10)), 0.25, 1e-9);
}

TEST(SSide, Examples) {
  EXPECT_NEAR(s_side(BoundingBox(0, 0, 7, 9), BoundingBox(0, 0, 7, 9)), 1.0, 1e-9);
  EXPECT_NEAR(s_side(BoundingBox(0, 0, 10, 10), BoundingBox(0, 0, 10, 20)), 0.5, 1e-9);
  // width 8 vs 10, height 9 vs 10
  EXPECT_NEAR(s_side(BoundingBox(0, 0, 8, 9), BoundingBox(0, 0, 10, 10)), 0.8, 1e-9);
}

TEST(SVolSide, SymmetricAndScaleInvariant) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const auto a = testing::random_box(rng, 40, 40, 15);
    const auto b = testing::random_box(rng, 40, 40, 15);
    EXPECT_EQ(s_vol(a, b), s_vol(b, a));
    EXPECT_EQ(s_side(a, b), s_side(b, a));
    const BoundingBox a3(0, 0, 3 * a.width(), 3 * a.height());
    const BoundingBox b3(0, 0, 3 * b.width(), 3 * b.height());
    EXPECT_NEAR(s_vol(a, b), s_vol(a3, b3), 1e-12);
    EXPECT_NEAR(s_side(a, b), s_side(a3, b3), 1e-12);
  }
}

TEST(SMatch, ZeroFlowSameBox) {
  std::vector<FlowField> flows{FlowField(20, 20)};
  const BoundingBox b(2, 3, 9, 8);
  EXPECT_NEAR(s_match(det(0, b), det(1, b), flows), 1.0, 1e-9);
}

TEST(SMatch, ZeroFlowDisjointBoxes) {
  std::vector<FlowField> flows{FlowField(20, 20)};
  EXPECT_NEAR(s_match(det(0, BoundingBox(0, 0, 5, 5)), det(1, BoundingBox(10, 10, 15, 15)), flows),
              0.0, 1e-9);
}

TEST(SMatch, UniformShiftOntoShiftedBox) {
  std::vector<FlowField> flows{FlowField(30, 20, 5.0f, 0.0f)};
  const BoundingBox a(2, 3, 12, 10);
  EXPECT_NEAR(s_match(det(0, a), det(1, a.translated(5, 0)), flows), 1.0, 1e-9);
}

TEST(SMatch, MissingFlowIsAnInputError) {
  std::vector<FlowField> flows{FlowField(20, 20)};
  const BoundingBox b(0, 0, 4, 4);
  EXPECT_THROW(s_match(det(0, b), det(2, b), flows), InputError);
  EXPECT_THROW(s_match(det(1, b), det(1, b), flows), InputError);
}

// Pixel-by-pixel reference: follow every pixel of a through each hop.
double s_match_oracle(const Detection& a, const Detection& b,
                      const std::vector<FlowField>& flows) {
  std::set<std::pair<int, int>> hit;
  for (int y = a.box.y_min(); y < a.box.y_max(); ++y) {
    for (int x = a.box.x_min(); x < a.box.x_max(); ++x) {
      double px = x, py = y;
      bool alive = true;
      for (int t = a.frame; t < b.frame && alive; ++t) {
        const FlowField& f = flows[t];
        const int ix = static_cast<int>(px), iy = static_cast<int>(py);
        const double nx = std::round(ix + f.u[f.index(ix, iy)]);
        const double ny = std::round(iy + f.v[f.index(ix, iy)]);
        alive = nx >= 0 && ny >= 0 && nx < f.width && ny < f.height;
        px = nx, py = ny;
      }
      if (alive && b.box.contains(static_cast<int>(px), static_cast<int>(py)))
        hit.emplace(static_cast<int>(px), static_cast<int>(py));
    }
  }
  return static_cast<double>(hit.size()) / static_cast<double>(b.box.area());
}

TEST(SMatch, MatchesPixelOracleOnRandomFlows) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<float> disp(-3.0f, 3.0f);
  for (int trial = 0; trial < 60; ++trial) {
    const int w = 28, h = 24;
    std::vector<FlowField> flows;
    for (int t = 0; t < 3; ++t) {
      FlowField f(w, h);
      for (std::size_t i = 0; i < f.u.size(); ++i) f.u[i] = disp(rng), f.v[i] = disp(rng);
      flows.push_back(std::move(f));
    }
    const int span = 1 + trial % 3;
    const auto a = det(0, testing::random_box(rng, w, h, 20));
    const auto b = det(span, testing::random_box(rng, w, h, 20));
    EXPECT_NEAR(s_match(a, b, flows), s_match_oracle(a, b, flows), 1e-12);
  }
}

TEST(PropagateCenter, StaticScene) {
  const Image img = testing::noise_image(60, 50, 1);
  SimilarityConfig cfg;
  const auto a = det(0, BoundingBox(20, 15, 32, 27));
  EXPECT_EQ(propagate_center(a, img, img, cfg), box_center(a.box));
}

TEST(PropagateCenter, TranslatedTexture) {
  const Image img = testing::noise_image(80, 60, 2);
  const Image moved = testing::shifted(img, 7, 3);
  SimilarityConfig cfg;
  const auto a = det(0, BoundingBox(20, 15, 36, 31));
  const Point2d c = propagate_center(a, img, moved, cfg);
  EXPECT_NEAR(c.x, box_center(a.box).x + 7, 1e-6);
  EXPECT_NEAR(c.y, box_center(a.box).y + 3, 1e-6);
}

TEST(PropagateCenter, TexturelessFallsBackToZeroDisplacement) {
  const Image img(40, 40, {100, 100, 100});
  SimilarityConfig cfg;
  const auto a = det(0, BoundingBox(10, 10, 20, 20));
  EXPECT_EQ(propagate_center(a, img, img, cfg), box_center(a.box));
}

// Floating-point NCC over every admissible offset with the same tie rule.
Displacement ncc_oracle(const Image& from, const BoundingBox& box, const Image& to, int radius) {
  const auto g0 = to_gray(from), g1 = to_gray(to);
  const int w = box.width(), h = box.height();
  const double n = static_cast<double>(w) * h;
  double pm = 0.0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) pm += g0[from.index(box.x_min() + x, box.y_min() + y)];
  pm /= n;
  Displacement best{0, 0, -2.0};
  long best_len = -1;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      const int x0 = box.x_min() + dx, y0 = box.y_min() + dy;
      if (x0 < 0 || y0 < 0 || x0 + w > to.width() || y0 + h > to.height()) continue;
      double wm = 0.0;
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) wm += g1[to.index(x0 + x, y0 + y)];
      wm /= n;
      double cross = 0.0, vp = 0.0, vw = 0.0;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const double p = g0[from.index(box.x_min() + x, box.y_min() + y)] - pm;
          const double q = g1[to.index(x0 + x, y0 + y)] - wm;
          cross += p * q, vp += p * p, vw += q * q;
        }
      }
      const double score = (vp < 1e-9 || vw < 1e-9) ? 0.0 : cross / std::sqrt(vp * vw);
      const long len = static_cast<long>(dx) * dx + static_cast<long>(dy) * dy;
      const bool better = score > best.score + 1e-9 ||
                          (std::abs(score - best.score) <= 1e-9 && len < best_len);
      if (better) best = {dx, dy, score}, best_len = len;
    }
  }
  return best;
}

TEST(CorrelateBox, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const Image a = testing::noise_image(40, 32, 100 + trial);
    const int dx = static_cast<int>(rng() % 9) - 4, dy = static_cast<int>(rng() % 9) - 4;
    Image b = testing::shifted(a, dx, dy, {128, 128, 128});
    if (trial % 2) b = testing::noise_image(40, 32, 900 + trial);
    const BoundingBox box(12, 10, 22, 19);
    const auto got = correlate_box(a, box, b, 6);
    const auto want = ncc_oracle(a, box, b, 6);
    EXPECT_EQ(got.dx, want.dx) << "trial " << trial;
    EXPECT_EQ(got.dy, want.dy) << "trial " << trial;
    EXPECT_NEAR(got.score, want.score, 1e-6);
  }
}

TEST(CorrelateBox, RejectsBoxOutsideSource) {
  Image img(20, 20);
  EXPECT_THROW(correlate_box(img, BoundingBox(15, 15, 25, 25), img, 3), BoundsError);
}

TEST(SCenter, Examples) {
  SimilarityConfig cfg;
  EXPECT_NEAR(s_center({3, 4}, {3, 4}, cfg), 1.0, 1e-9);
  EXPECT_NEAR(s_center({0, 0}, {6, 8}, cfg), 0.5, 1e-9);
  EXPECT_NEAR(s_center({0, 0}, {90, 0}, cfg), 0.1, 1e-9);
}

TEST(SCenter, DecreasingAndBounded) {
  SimilarityConfig cfg;
  double prev = 2.0;
  for (double d = 0.0; d < 500.0; d += 0.5) {
    const double v = s_center({0, 0}, {d, 0}, cfg);
    EXPECT_LT(v, prev);
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
    prev = v;
  }
}

TEST(SApp, Examples) {
  SimilarityConfig cfg;
  const auto a = hist({0, 1, 1});
  EXPECT_NEAR(s_app(a, a, cfg).value(), 1.0, 1e-6);
  EXPECT_TRUE(s_app(hist({5, 0}), hist({0, 5}), cfg).is_neg_inf());
  const auto b = hist({3, 4, 5});
  EXPECT_NEAR(histogram_cosine(a, b), 0.9, 1e-12);
  EXPECT_NEAR(s_app(a, b, cfg).value(), 0.9, 1e-6);
  EXPECT_EQ(s_app(a, b, cfg), s_app(b, a, cfg));
}

TEST(SApp, ThresholdIsInclusive) {
  SimilarityConfig cfg;
  cfg.app_threshold = 0.9;
  EXPECT_TRUE(s_app(hist({0, 1, 1}), hist({3, 4, 5}), cfg).is_neg_inf());
}

TEST(SApp, EmptyHistogramIsAnInputError) {
  SimilarityConfig cfg;
  EXPECT_THROW(s_app(ColorHistogram{}, hist({1}), cfg), InputError);
}

class CompositeTest : public ::testing::Test {
 protected:
  void SetUp() override {
    frames = {Image(60, 40, {200, 30, 30}), Image(60, 40, {200, 30, 30})};
    flows = {FlowField(60, 40)};
  }
  std::vector<Image> frames;
  std::vector<FlowField> flows;
};

TEST_F(CompositeTest, AllTermsOneGivesScore) {
  const SimilarityContext ctx(frames, flows);
  const BoundingBox b(10, 10, 20, 20);
  const auto s = composite_similarity(det(0, b, 0.4), det(1, b, 0.7), ctx, {});
  EXPECT_NEAR(s.value.value(), 0.7, 1e-9);
}

TEST_F(CompositeTest, NegativeInfinityDominates) {
  const SimilarityContext ctx(frames, flows);
  const BoundingBox b(10, 10, 20, 20);
  const auto s = composite_similarity(det(0, b, 1, "car"), det(1, b, 1, "dog"), ctx, {});
  EXPECT_TRUE(s.value.is_neg_inf());
}

TEST_F(CompositeTest, ProductOfVolAndCenter) {
  // Textureless frames: the propagated center stays at a's center.
  const SimilarityContext ctx(frames, flows);
  const BoundingBox a(0, 0, 10, 10);
  SimilarityConfig cfg;
  cfg.use_side = false;
  cfg.use_match = false;
  cfg.use_app = false;
  const BoundingBox wide(0, 0, 20, 10);  // area 200, center (10, 5): deviation 5
  auto s = composite_similarity(det(0, a), det(1, wide), ctx, cfg);
  EXPECT_NEAR(s.value.value(), 0.5 * (1.0 / 1.5), 1e-9);
  const BoundingBox far(10, 0, 30, 10);  // area 200, center (20, 5): deviation 15
  s = composite_similarity(det(0, a), det(1, far), ctx, cfg);
  EXPECT_NEAR(s.value.value(), 0.5 * (1.0 / 2.5), 1e-9);
}

TEST_F(CompositeTest, ScoreVolHalfCenterHalf) {
  const SimilarityContext ctx(frames, flows);
  SimilarityConfig cfg;
  cfg.use_side = cfg.use_match = cfg.use_app = false;
  // a centered at (5, 5); b has twice the area and center (5, 15): 10 px away.
  const auto s = composite_similarity(det(0, BoundingBox(0, 0, 10, 10)),
                                      det(1, BoundingBox(0, 5, 10, 25)), ctx, cfg);
  EXPECT_NEAR(s.value.value(), 0.25, 1e-9);
}

TEST_F(CompositeTest, AllTermsDisabledEqualsScore) {
  const SimilarityContext ctx(frames, flows);
  SimilarityConfig cfg;
  cfg.use_category = cfg.use_app = cfg.use_vol = cfg.use_side = cfg.use_match =
      cfg.use_center = false;
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const double score = std::uniform_real_distribution<double>(0, 1)(rng);
    const auto s = composite_similarity(det(0, testing::random_box(rng, 60, 40, 20)),
                                        det(1, testing::random_box(rng, 60, 40, 20), score, "x"),
                                        ctx, cfg);
    EXPECT_EQ(s.value, ExtReal(score));
  }
}

TEST(SimilarityConfig, Validation) {
  SimilarityConfig cfg;
  cfg.app_threshold = 1.5;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.center_decay = 0.0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.search_radius = 0;
  EXPECT_THROW(cfg.validate(), InputError);
}

}  // namespace
}  // namespace vidseg
