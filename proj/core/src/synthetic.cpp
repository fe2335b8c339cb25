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
#include "vidseg/synthetic.hpp"

#include <algorithm>
#include <random>

#include "vidseg/errors.hpp"
#include "vidseg/superpixel_graph.hpp"

namespace vidseg {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint8_t clamp8(int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); }

// Fixed pseudo-random texture value in [-amp, amp] for a texel.
Rgb textured(Rgb base, int amp, std::uint64_t key, int tx, int ty) {
  if (amp <= 0) return base;
  const std::uint64_t h =
      mix(key ^ mix(static_cast<std::uint64_t>(tx) * 73856093ull ^
                    static_cast<std::uint64_t>(ty) * 19349663ull));
  const int span = 2 * amp + 1;
  return {clamp8(base.r + static_cast<int>(h % span) - amp),
          clamp8(base.g + static_cast<int>((h >> 16) % span) - amp),
          clamp8(base.b + static_cast<int>((h >> 32) % span) - amp)};
}

BoundingBox object_box(const SyntheticObject& o, int t) {
  return BoundingBox(o.x + o.vx * t, o.y + o.vy * t, o.x + o.vx * t + o.width,
                     o.y + o.vy * t + o.height);
}

void validate_spec(const SceneSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0) throw InputError("scene size must be positive");
  if (spec.frames <= 0) throw InputError("scene needs at least one frame");
  if (spec.superpixel_cell < 1) throw InputError("superpixel cell must be >= 1");
  if (spec.texture < 0) throw InputError("texture amplitude must be non-negative");
  const auto& n = spec.noise;
  if (n.jitter < 0) throw InputError("jitter must be non-negative");
  if (n.dropout < 0.0 || n.dropout > 1.0) throw InputError("dropout must lie in [0, 1]");
  if (n.false_positive_rate < 0.0) throw InputError("false-positive rate must be non-negative");
  if (n.false_positive_score < 0.0 || n.false_positive_score > 1.0)
    throw InputError("false-positive score must lie in [0, 1]");
  for (const auto& o : spec.objects) {
    if (o.width <= 0 || o.height <= 0) throw InputError("object size must be positive");
    if (o.score < 0.0 || o.score > 1.0) throw InputError("object score must lie in [0, 1]");
    if (o.category.empty()) throw InputError("object category must not be empty");
  }
}

}  // namespace

SyntheticScene synthesize_scene(const SceneSpec& spec) {
  validate_spec(spec);
  const int w = spec.width, h = spec.height, frames = spec.frames;
  const int k = static_cast<int>(spec.objects.size());
  SyntheticScene scene;
  for (const auto& o : spec.objects) scene.categories.push_back(o.category);
  scene.masks.assign(k, {});
  scene.boxes.assign(k, BoxTrack(frames));

  const std::uint64_t bg_key = mix(spec.seed);
  for (int t = 0; t < frames; ++t) {
    Image img(w, h);
    LabelImage gt(w, h, 0);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) img.at(x, y) = textured(spec.background, spec.texture, bg_key, x, y);
    for (int i = 0; i < k; ++i) {
      const auto& o = spec.objects[i];
      const BoundingBox b = object_box(o, t);
      const std::uint64_t key = mix(spec.seed ^ mix(0x51ed270b + i));
      for (int y = std::max(0, b.y_min()); y < std::min(h, b.y_max()); ++y) {
        for (int x = std::max(0, b.x_min()); x < std::min(w, b.x_max()); ++x) {
          img.at(x, y) = textured(o.color, spec.texture, key, x - b.x_min(), y - b.y_min());
          gt.at(x, y) = i + 1;
        }
      }
    }
    for (int i = 0; i < k; ++i) {
      PixelMask m(w, h);
      int x0 = w, y0 = h, x1 = -1, y1 = -1;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          if (gt.at(x, y) != i + 1) continue;
          m.at(x, y) = 1.0;
          x0 = std::min(x0, x), y0 = std::min(y0, y);
          x1 = std::max(x1, x), y1 = std::max(y1, y);
        }
      }
      if (x1 >= 0) scene.boxes[i][t] = BoundingBox(x0, y0, x1 + 1, y1 + 1);
      scene.masks[i].push_back(std::move(m));
    }
    if (t + 1 < frames) {
      FlowField f(w, h);
      for (std::size_t p = 0; p < gt.size(); ++p) {
        if (gt[p] == 0) continue;
        f.u[p] = static_cast<float>(spec.objects[gt[p] - 1].vx);
        f.v[p] = static_cast<float>(spec.objects[gt[p] - 1].vy);
      }
      scene.flows.push_back(std::move(f));
    }
    LabelImage sp = grid_superpixels(w, h, spec.superpixel_cell);
    for (std::size_t p = 0; p < sp.size(); ++p) sp[p] = sp[p] * (k + 1) + gt[p];
    scene.superpixels.push_back(std::move(sp));
    scene.frames.push_back(std::move(img));
    scene.ground_truth.push_back(std::move(gt));
  }

  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (!(spec.objects[i].color == spec.objects[j].color)) continue;
      for (int t = 0; t < frames; ++t) {
        if (intersection_area(object_box(spec.objects[i], t), object_box(spec.objects[j], t)) > 0) {
          scene.warnings.push_back("objects " + std::to_string(i) + " and " + std::to_string(j) +
                                   " share a color and overlap in frame " + std::to_string(t));
          break;
        }
      }
    }
  }

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> jitter(-spec.noise.jitter, spec.noise.jitter);
  for (int i = 0; i < k; ++i) {
    int first = -1, last = -1;
    for (int t = 0; t < frames; ++t) {
      if (scene.boxes[i][t]) {
        if (first < 0) first = t;
        last = t;
      }
    }
    for (int t = 0; t < frames; ++t) {
      if (!scene.boxes[i][t]) continue;
      const bool endpoint = t == first || t == last;
      const bool drop = unit(rng) < spec.noise.dropout;
      if (drop && !(endpoint && spec.noise.keep_endpoints)) continue;
      const BoundingBox& b = *scene.boxes[i][t];
      int x0 = b.x_min(), y0 = b.y_min(), x1 = b.x_max(), y1 = b.y_max();
      if (spec.noise.jitter > 0) {
        x0 = std::clamp(x0 + jitter(rng), 0, w - 1);
        y0 = std::clamp(y0 + jitter(rng), 0, h - 1);
        x1 = std::clamp(x1 + jitter(rng), x0 + 1, w);
        y1 = std::clamp(y1 + jitter(rng), y0 + 1, h);
      }
      scene.detections.push_back({t, BoundingBox(x0, y0, x1, y1), spec.objects[i].score,
                                  spec.objects[i].category});
    }
  }
  if (spec.noise.false_positive_rate > 0.0) {
    std::poisson_distribution<int> clutter(spec.noise.false_positive_rate);
    const std::string category = k > 0 ? spec.objects.front().category : "object";
    for (int t = 0; t < frames; ++t) {
      const int n = clutter(rng);
      for (int c = 0; c < n; ++c) {
        const int bw = std::uniform_int_distribution<int>(4, std::max(4, w / 4))(rng);
        const int bh = std::uniform_int_distribution<int>(4, std::max(4, h / 4))(rng);
        const int x0 = std::uniform_int_distribution<int>(0, std::max(0, w - bw))(rng);
        const int y0 = std::uniform_int_distribution<int>(0, std::max(0, h - bh))(rng);
        scene.detections.push_back({t, BoundingBox(x0, y0, std::min(w, x0 + bw), std::min(h, y0 + bh)),
                                    spec.noise.false_positive_score, category});
      }
    }
  }
  std::stable_sort(scene.detections.begin(), scene.detections.end(),
                   [](const Detection& a, const Detection& b) { return a.frame < b.frame; });
  return scene;
}

SceneSpec preset_scene(std::string_view name, std::uint64_t seed) {
  SceneSpec spec;
  spec.seed = seed;
  if (name == "single") {
    spec.frames = 12;
    spec.objects.push_back({"car", 20, 16, {210, 50, 40}, 14, 20, 3, 1, 0.9});
  } else if (name == "crossing") {
    spec.width = 112;
    spec.frames = 14;
    spec.objects.push_back({"person", 18, 24, {220, 60, 50}, 6, 16, 6, 0, 0.9});
    spec.objects.push_back({"person", 18, 24, {40, 90, 220}, 88, 30, -6, 0, 0.85});
  } else if (name == "static") {
    spec.frames = 8;
    spec.objects.push_back({"bird", 18, 14, {230, 200, 40}, 30, 26, 0, 0, 0.9});
  } else {
    throw InputError("unknown scene preset '" + std::string(name) + "'");
  }
  return spec;
}

}  // namespace vidseg
