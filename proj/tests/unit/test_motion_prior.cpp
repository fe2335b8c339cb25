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

#include "test_util.hpp"
#include "vidseg/errors.hpp"
#include "vidseg/motion_prior.hpp"

namespace vidseg {
namespace {

FlowField moving_rect(int w, int h, const BoundingBox& r, float u, float v) {
  FlowField f(w, h);
  for (int y = r.y_min(); y < r.y_max(); ++y)
    for (int x = r.x_min(); x < r.x_max(); ++x) f.u[f.index(x, y)] = u, f.v[f.index(x, y)] = v;
  return f;
}

// Marches each ray pixel by pixel.
PixelMask ray_oracle(const PixelMask& b, int directions) {
  static constexpr int kDirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                      {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  PixelMask out(b.width(), b.height());
  for (int y = 0; y < b.height(); ++y) {
    for (int x = 0; x < b.width(); ++x) {
      int votes = 0;
      for (int d = 0; d < directions; ++d) {
        for (int s = 1;; ++s) {
          const int px = x + s * kDirs[d][0], py = y + s * kDirs[d][1];
          if (px < 0 || py < 0 || px >= b.width() || py >= b.height()) break;
          if (b.at(px, py) > 0.5) {
            ++votes;
            break;
          }
        }
      }
      out.at(x, y) = 2 * votes > directions ? 1.0 : 0.0;
    }
  }
  return out;
}

TEST(MotionBoundaries, UniformFlowHasNone) {
  MotionPriorConfig cfg;
  EXPECT_EQ(motion_boundaries(FlowField(30, 20, 4.0f, -2.5f), cfg).count_above(0.5), 0u);
  EXPECT_EQ(motion_boundaries(FlowField(30, 20), cfg).count_above(0.5), 0u);
}

TEST(MotionBoundaries, RingAroundMovingRectangle) {
  MotionPriorConfig cfg;
  const BoundingBox r(10, 8, 20, 16);
  const PixelMask b = motion_boundaries(moving_rect(32, 24, r, 3.0f, 0.0f), cfg);
  for (int y = 0; y < 24; ++y) {
    for (int x = 0; x < 32; ++x) {
      const bool col_edge = x == 9 || x == 10 || x == 19 || x == 20;
      const bool row_edge = y == 7 || y == 8 || y == 15 || y == 16;
      const bool expected = (col_edge && y >= 8 && y < 16) || (row_edge && x >= 10 && x < 20);
      EXPECT_EQ(b.at(x, y) > 0.5, expected) << x << "," << y;
    }
  }
}

TEST(InsideOutside, ClosedRing) {
  MotionPriorConfig cfg;
  PixelMask ring(40, 30);
  for (int x = 10; x < 25; ++x) ring.at(x, 5) = ring.at(x, 20) = 1.0;
  for (int y = 5; y <= 20; ++y) ring.at(10, y) = ring.at(24, y) = 1.0;
  const PixelMask m = inside_outside_map(ring, cfg);
  for (int y = 0; y < 30; ++y)
    for (int x = 0; x < 40; ++x) {
      if (x > 10 && x < 24 && y > 5 && y < 20) EXPECT_EQ(m.at(x, y), 1.0);
      if (x < 10 || x > 24 || y < 5 || y > 20) EXPECT_EQ(m.at(x, y), 0.0);
    }
}

TEST(InsideOutside, EmptyBoundaries) {
  MotionPriorConfig cfg;
  EXPECT_EQ(inside_outside_map(PixelMask(20, 20), cfg).count_above(0.5), 0u);
}

TEST(InsideOutside, OpenSideStillInsideWithFiveRays) {
  MotionPriorConfig cfg;
  PixelMask ring(40, 30);
  for (int x = 10; x < 25; ++x) ring.at(x, 20) = 1.0;
  for (int y = 5; y <= 20; ++y) ring.at(10, y) = ring.at(24, y) = 1.0;
  const PixelMask m = inside_outside_map(ring, cfg);
  // Deep inside: left, right, down and both lower diagonals hit.
  EXPECT_EQ(m.at(17, 15), 1.0);
  EXPECT_EQ(m, ray_oracle(ring, 8));
}

TEST(InsideOutside, MatchesRayMarchingOracle) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    PixelMask b(23, 17);
    const double density = 0.02 + 0.01 * (trial % 10);
    for (auto& v : b.values()) v = std::uniform_real_distribution<double>(0, 1)(rng) < density;
    MotionPriorConfig cfg;
    cfg.ray_directions = trial % 2 ? 4 : 8;
    EXPECT_EQ(inside_outside_map(b, cfg), ray_oracle(b, cfg.ray_directions)) << trial;
  }
}

TEST(RestrictMap, Examples) {
  PixelMask m(20, 10);
  for (int y = 2; y < 8; ++y)
    for (int x = 4; x < 12; ++x) m.at(x, y) = 1.0;
  EXPECT_EQ(restrict_map(m, BoundingBox(0, 0, 20, 10)), m);
  EXPECT_EQ(restrict_map(m, BoundingBox(14, 0, 20, 10)).count_above(0.0), 0u);
  const PixelMask half = restrict_map(m, BoundingBox(0, 0, 8, 10));
  EXPECT_EQ(half.count_above(0.0), 24u);
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 20; ++x) {
      EXPECT_LE(half.at(x, y), m.at(x, y));
      if (x < 8) EXPECT_EQ(half.at(x, y), m.at(x, y));
    }
}

std::vector<PixelMask> constant_sequence(int n, const PixelMask& m) {
  return std::vector<PixelMask>(n, m);
}

TEST(PropagatePrior, StationaryFixedPoint) {
  PixelMask m(12, 10);
  for (int y = 3; y < 7; ++y)
    for (int x = 2; x < 9; ++x) m.at(x, y) = 0.8;
  const auto ev = constant_sequence(6, m);
  const std::vector<FlowField> flows(5, FlowField(12, 10));
  const auto out = propagate_prior(ev, flows, 0, 5, {});
  for (const auto& p : out) EXPECT_EQ(p, m);
}

TEST(PropagatePrior, SpikeDecaysGeometrically) {
  MotionPriorConfig cfg;
  const int n = 11, s = 5;
  std::vector<PixelMask> ev(n, PixelMask(6, 6));
  ev[s].at(3, 3) = 1.0;
  const std::vector<FlowField> flows(n - 1, FlowField(6, 6));
  const auto out = propagate_prior(ev, flows, 0, n - 1, cfg);
  for (int t = 0; t < n; ++t) {
    const int k = std::abs(t - s);
    const double want = k <= cfg.smoothing_window ? std::pow(cfg.smoothing_decay, k) : 0.0;
    EXPECT_NEAR(out[t].at(3, 3), want, 1e-12) << "frame " << t;
  }
}

TEST(PropagatePrior, FollowsTranslation) {
  MotionPriorConfig cfg;
  const int n = 4;
  std::vector<PixelMask> ev(n, PixelMask(20, 8));
  ev[0].at(2, 4) = 1.0;
  const std::vector<FlowField> flows(n - 1, FlowField(20, 8, 3.0f, 0.0f));
  const auto out = propagate_prior(ev, flows, 0, n - 1, cfg);
  for (int t = 1; t < n; ++t) {
    EXPECT_NEAR(out[t].at(2 + 3 * t, 4), std::pow(cfg.smoothing_decay, t), 1e-12);
    EXPECT_EQ(out[t].count_above(0.0), 1u);
  }
}

TEST(PropagatePrior, ZeroDecayIsIdentityInsideIntervalAndZeroOutside) {
  MotionPriorConfig cfg;
  cfg.smoothing_decay = 0.0;
  std::mt19937_64 rng(1);
  std::vector<PixelMask> ev(6, PixelMask(8, 8));
  for (auto& m : ev)
    for (auto& v : m.values()) v = std::uniform_real_distribution<double>(0, 1)(rng);
  const std::vector<FlowField> flows(5, FlowField(8, 8, 1.0f, 1.0f));
  const auto out = propagate_prior(ev, flows, 2, 3, cfg);
  for (int t = 0; t < 6; ++t) {
    if (t == 2 || t == 3) EXPECT_EQ(out[t], ev[t]);
    else EXPECT_EQ(out[t].count_above(0.0), 0u);
  }
}

TEST(PropagatePrior, BoundedAndMonotone) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_real_distribution<float> f(-2.0f, 2.0f);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PixelMask> ev(5, PixelMask(10, 9)), more;
    for (auto& m : ev)
      for (auto& v : m.values()) v = u(rng) < 0.3 ? u(rng) : 0.0;
    more = ev;
    for (auto& m : more)
      for (auto& v : m.values()) v = std::min(1.0, v + (u(rng) < 0.2 ? u(rng) : 0.0));
    std::vector<FlowField> flows(4, FlowField(10, 9));
    for (auto& fl : flows)
      for (std::size_t i = 0; i < fl.u.size(); ++i) fl.u[i] = f(rng), fl.v[i] = f(rng);
    const auto a = propagate_prior(ev, flows, 1, 3, {});
    const auto b = propagate_prior(more, flows, 1, 3, {});
    for (int t = 0; t < 5; ++t)
      for (std::size_t i = 0; i < a[t].size(); ++i) {
        EXPECT_GE(a[t][i], 0.0);
        EXPECT_LE(a[t][i], 1.0);
        EXPECT_LE(a[t][i], b[t][i]);
      }
  }
}

TEST(PropagatePrior, MisalignedInputsAreRejected) {
  std::vector<PixelMask> ev(4, PixelMask(5, 5));
  std::vector<FlowField> flows(2, FlowField(5, 5));
  EXPECT_THROW(propagate_prior(ev, flows, 0, 3, {}), InputError);
  flows.push_back(FlowField(6, 5));
  EXPECT_THROW(propagate_prior(ev, flows, 0, 3, {}), InputError);
}

TEST(MotionPriorConfig, Validation) {
  MotionPriorConfig cfg;
  cfg.ray_directions = 6;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.smoothing_decay = 1.0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.boundary_threshold = 0.0;
  EXPECT_THROW(cfg.validate(), InputError);
}

}  // namespace
}  // namespace vidseg
