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
#include <limits>
#include <random>

#include "test_util.hpp"
#include "vidseg/errors.hpp"
#include "vidseg/gmm.hpp"
#include "vidseg/grabcut.hpp"
#include "vidseg/maxflow.hpp"

#include <Eigen/Eigenvalues>

namespace vidseg {
namespace {

TEST(MaxFlow, SimpleNetwork) {
  MaxFlow g(0);
  const int a = g.add_node(), b = g.add_node();
  g.add_edge(g.source(), a, 3);
  g.add_edge(g.source(), b, 2);
  g.add_edge(a, b, 1);
  g.add_edge(a, g.sink(), 2);
  g.add_edge(b, g.sink(), 3);
  EXPECT_DOUBLE_EQ(g.solve(), 5.0);
}

TEST(MaxFlow, EqualsMinimumCutByEnumeration) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> cap(0, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const int inner = 1 + static_cast<int>(rng() % 7);
    const int n = inner + 2;
    std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v && rng() % 3 == 0) c[u][v] = cap(rng);
    MaxFlow g(inner);
    ASSERT_EQ(g.source(), inner);
    ASSERT_EQ(g.sink(), inner + 1);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (c[u][v] > 0) g.add_edge(u, v, c[u][v]);
    const double flow = g.solve();
    double best = std::numeric_limits<double>::infinity();
    const int s = g.source(), t = g.sink();
    for (int mask = 0; mask < (1 << n); ++mask) {
      if (!(mask >> s & 1) || (mask >> t & 1)) continue;
      double cut = 0.0;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if ((mask >> u & 1) && !(mask >> v & 1)) cut += c[u][v];
      best = std::min(best, cut);
    }
    EXPECT_DOUBLE_EQ(flow, best) << "trial " << trial;
    double side_cut = 0.0;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (g.on_source_side(u) && !g.on_source_side(v)) side_cut += c[u][v];
    EXPECT_DOUBLE_EQ(side_cut, flow);
  }
}

TEST(BinaryCut, MatchesExhaustiveMinimum) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> val(-8, 8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    struct Pair {
      int p, q;
      double e[4];
    };
    std::vector<double> u0(n), u1(n);
    std::vector<Pair> pairs;
    BinaryCut cut(n);
    for (int v = 0; v < n; ++v) {
      u0[v] = val(rng) / 4.0, u1[v] = val(rng) / 4.0;
      cut.add_unary(v, u0[v], u1[v]);
    }
    for (int k = 0; k < 2 * n; ++k) {
      const int p = static_cast<int>(rng() % n), q = static_cast<int>(rng() % n);
      if (p == q) continue;
      Pair pr{p, q, {val(rng) / 4.0, std::abs(val(rng)) / 4.0, std::abs(val(rng)) / 4.0, 0}};
      pr.e[3] = std::min(pr.e[1] + pr.e[2] - pr.e[0], static_cast<double>(val(rng)) / 4.0);
      cut.add_pairwise(p, q, pr.e[0], pr.e[1], pr.e[2], pr.e[3]);
      pairs.push_back(pr);
    }
    const double got = cut.minimize();
    auto energy = [&](int mask) {
      double e = 0.0;
      for (int v = 0; v < n; ++v) e += (mask >> v & 1) ? u1[v] : u0[v];
      for (const auto& pr : pairs) e += pr.e[2 * (mask >> pr.p & 1) + (mask >> pr.q & 1)];
      return e;
    };
    double best = std::numeric_limits<double>::infinity();
    for (int mask = 0; mask < (1 << n); ++mask) best = std::min(best, energy(mask));
    EXPECT_NEAR(got, best, 1e-9) << "trial " << trial;
    int mask = 0;
    for (int v = 0; v < n; ++v) mask |= cut.label(v) << v;
    EXPECT_NEAR(energy(mask), best, 1e-9);
  }
}

TEST(BinaryCut, RejectsNonSubmodularPairs) {
  BinaryCut cut(2);
  EXPECT_THROW(cut.add_pairwise(0, 1, 1.0, 0.0, 0.0, 1.0), InputError);
}

std::vector<Eigen::Vector3d> blob_samples(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  const Eigen::Vector3d centers[3] = {{40, 60, 200}, {180, 30, 30}, {90, 200, 90}};
  std::vector<Eigen::Vector3d> out;
  for (int i = 0; i < n; ++i) {
    const auto& c = centers[rng() % 3];
    out.push_back(c + Eigen::Vector3d(6 * g(rng), 9 * g(rng), 4 * g(rng)));
  }
  return out;
}

TEST(FitGmm, LogLikelihoodNeverDecreases) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto samples = blob_samples(rng, 300);
    GmmFitTrace trace;
    GmmFitOptions opts;
    opts.seed = trial;
    fit_gmm(samples, 1 + trial % 5, opts, &trace);
    ASSERT_GE(trace.log_likelihood.size(), 2u);
    for (std::size_t i = 1; i < trace.log_likelihood.size(); ++i)
      EXPECT_GE(trace.log_likelihood[i], trace.log_likelihood[i - 1] -
                                             1e-9 * std::abs(trace.log_likelihood[i - 1]));
  }
}

TEST(FitGmm, DensityIntegratesToOne) {
  std::mt19937_64 rng(2);
  std::vector<Eigen::Vector3d> samples;
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 200; ++i)
    samples.push_back(Eigen::Vector3d(50, 50, 50) +
                      Eigen::Vector3d(2 * g(rng), 3 * g(rng), 1.5 * g(rng)) +
                      (i % 2 ? Eigen::Vector3d(8, 0, 0) : Eigen::Vector3d::Zero()));
  const Gmm model = fit_gmm(samples, 2);
  // Midpoint Riemann sum over a cube that holds essentially all the mass.
  const double step = 0.5;
  double mass = 0.0;
  for (double x = 20; x < 90; x += step)
    for (double y = 20; y < 80; y += step)
      for (double z = 30; z < 70; z += step)
        mass += std::exp(model.log_density({x + step / 2, y + step / 2, z + step / 2}));
  EXPECT_NEAR(mass * step * step * step, 1.0, 1e-3);
}

TEST(FitGmm, ComponentCountShrinksToDistinctSamples) {
  const std::vector<Eigen::Vector3d> samples(50, Eigen::Vector3d(10, 20, 30));
  const Gmm g = fit_gmm(samples, 5);
  EXPECT_EQ(g.size(), 1);
  EXPECT_TRUE(std::isfinite(g.log_density({10, 20, 30})));
}

TEST(FitGmm, CovarianceEigenvaluesAreFloored) {
  std::vector<Eigen::Vector3d> samples;
  for (int i = 0; i < 40; ++i) samples.emplace_back(i % 2 ? 100 : 101, 50, 50);
  const Gmm g = fit_gmm(samples, 1);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(g.components()[0].covariance);
  EXPECT_GE(es.eigenvalues().minCoeff(), kVarianceFloor - 1e-9);
}

TEST(FitGmm, EmptySampleIsAnInputError) {
  EXPECT_THROW(fit_gmm({}, 3), InputError);
}

TEST(Gmm, UniformModel) {
  const Gmm u = Gmm::uniform();
  EXPECT_TRUE(u.degenerate());
  EXPECT_DOUBLE_EQ(gmm_score(u, {1, 2, 3}), -3.0 * std::log(256.0));
}

TEST(Grabcut, InitBoxAndBand) {
  GrabcutConfig cfg;
  EXPECT_EQ(grabcut_init_box(BoundingBox(10, 10, 30, 20), cfg), BoundingBox(12, 11, 28, 19));
  const BoundingBox box(40, 40, 60, 50);
  const BoundingBox band = grabcut_band(box, 200, 200);
  const auto ring = band.area() - box.area();
  EXPECT_GE(ring, box.area());
  const BoundingBox thinner(band.x_min() + 1, band.y_min() + 1, band.x_max() - 1, band.y_max() - 1);
  EXPECT_LT(thinner.area() - box.area(), box.area());
  EXPECT_EQ(grabcut_band(BoundingBox(0, 0, 10, 10), 12, 12), BoundingBox(0, 0, 12, 12));
}

Image two_color_scene(std::uint64_t seed, BoundingBox object) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> jitter(-15, 15);
  Image img(64, 48);
  for (int y = 0; y < 48; ++y)
    for (int x = 0; x < 64; ++x) {
      const bool fg = object.contains(x, y);
      const int r = (fg ? 210 : 40) + jitter(rng), g = (fg ? 50 : 90) + jitter(rng),
                b = (fg ? 40 : 200) + jitter(rng);
      img.at(x, y) = {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                      static_cast<std::uint8_t>(b)};
    }
  return img;
}

TEST(Grabcut, TwoColorBoxMatchesColorThreshold) {
  const BoundingBox object(22, 14, 42, 34);
  const BoundingBox box(18, 10, 46, 38);
  const Image img = two_color_scene(3, object);
  GrabcutTrace trace;
  const PixelMask fg = grabcut_box(img, box, {}, &trace);
  int correct = 0;
  for (int y = box.y_min(); y < box.y_max(); ++y)
    for (int x = box.x_min(); x < box.x_max(); ++x)
      correct += (fg.at(x, y) > 0.5) == (img.at(x, y).r > 128);
  EXPECT_GE(static_cast<double>(correct) / box.area(), 0.99);
  for (std::size_t i = 1; i < trace.energy.size(); ++i)
    EXPECT_LE(trace.energy[i], trace.energy[i - 1] + 1e-9);
  EXPECT_FALSE(trace.fallback);
}

TEST(Grabcut, EmptyOutsideBox) {
  const Image img = two_color_scene(4, BoundingBox(22, 14, 42, 34));
  const BoundingBox box(18, 10, 46, 38);
  const PixelMask fg = grabcut_box(img, box, {});
  for (int y = 0; y < 48; ++y)
    for (int x = 0; x < 64; ++x)
      if (!box.contains(x, y)) EXPECT_EQ(fg.at(x, y), 0.0);
}

TEST(Grabcut, UniformImageReturnsInitializationExactly) {
  const Image img(50, 40, {120, 120, 120});
  const BoundingBox box(10, 8, 35, 30);
  GrabcutConfig cfg;
  GrabcutTrace trace;
  const PixelMask fg = grabcut_box(img, box, cfg, &trace);
  PixelMask want(50, 40);
  const BoundingBox init = grabcut_init_box(box, cfg);
  for (int y = init.y_min(); y < init.y_max(); ++y)
    for (int x = init.x_min(); x < init.x_max(); ++x) want.at(x, y) = 1.0;
  EXPECT_EQ(fg, want);
  EXPECT_TRUE(trace.fallback);
}

TEST(Grabcut, BoxOutsideImageIsRejected) {
  EXPECT_THROW(grabcut_box(Image(20, 20), BoundingBox(10, 10, 25, 15), {}), BoundsError);
}

}  // namespace
}  // namespace vidseg
