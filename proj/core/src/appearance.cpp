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
#include "vidseg/appearance.hpp"

#include <algorithm>
#include <random>

#include "vidseg/errors.hpp"

namespace vidseg {

namespace {

std::vector<Eigen::Vector3d> cap(std::vector<Eigen::Vector3d> samples,
                                 std::size_t limit, std::uint64_t seed) {
  if (samples.size() <= limit) return samples;
  std::mt19937_64 rng(seed);
  std::shuffle(samples.begin(), samples.end(), rng);
  samples.resize(limit);
  return samples;
}

Gmm fit_or_uniform(std::vector<Eigen::Vector3d> samples, const AppearanceConfig& cfg,
                   std::uint64_t seed) {
  if (samples.empty()) return Gmm::uniform();
  samples = cap(std::move(samples), cfg.max_samples, seed);
  GmmFitOptions opts;
  opts.seed = seed;
  return fit_gmm(samples, cfg.components, opts);
}

}  // namespace

AppearanceModels build_appearance_models(
    std::span<const std::vector<PixelMask>> object_evidence,
    std::span<const Tube> tubes, std::span<const Image> frames,
    const AppearanceConfig& cfg) {
  AppearanceModels out;
  for (std::size_t i = 0; i < object_evidence.size(); ++i) {
    const auto& masks = object_evidence[i];
    if (masks.size() > frames.size()) {
      throw InputError("object evidence spans more frames than the video");
    }
    std::vector<Eigen::Vector3d> samples;
    for (std::size_t t = 0; t < masks.size(); ++t) {
      const PixelMask& m = masks[t];
      if (m.size() == 0) continue;
      if (m.width() != frames[t].width() || m.height() != frames[t].height()) {
        throw InputError("evidence mask of frame " + std::to_string(t) +
                         " does not match the image size");
      }
      const auto px = frames[t].pixels();
      for (std::size_t p = 0; p < m.size(); ++p)
        if (m[p] > 0.0) samples.push_back(to_vec(px[p]));
    }
    out.objects.push_back(fit_or_uniform(std::move(samples), cfg, cfg.seed + 1 + i));
  }

  std::vector<Eigen::Vector3d> bg;
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const Image& img = frames[t];
    std::vector<char> covered(img.size(), 0);
    for (const Tube& tube : tubes) {
      const auto b = tube.box_at(static_cast<int>(t));
      if (!b) continue;
      for (int y = std::max(b->y_min(), 0); y < std::min(b->y_max(), img.height()); ++y)
        for (int x = std::max(b->x_min(), 0); x < std::min(b->x_max(), img.width()); ++x)
          covered[img.index(x, y)] = 1;
    }
    const auto px = img.pixels();
    for (std::size_t p = 0; p < px.size(); ++p)
      if (!covered[p]) bg.push_back(to_vec(px[p]));
  }
  out.background = fit_or_uniform(std::move(bg), cfg, cfg.seed);
  return out;
}

}  // namespace vidseg
