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
#ifndef VIDSEG_SYNTHETIC_HPP
#define VIDSEG_SYNTHETIC_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vidseg/detection.hpp"
#include "vidseg/image.hpp"
#include "vidseg/metrics.hpp"

namespace vidseg {

/// A textured rectangle moving at constant integer velocity.
struct SyntheticObject {
  std::string category = "object";
  int width = 16;
  int height = 16;
  Rgb color{200, 40, 40};
  int x = 0;  // top-left corner in frame 0
  int y = 0;
  int vx = 0;  // pixels per frame
  int vy = 0;
  double score = 0.9;
};

struct DetectionNoise {
  int jitter = 0;                  // max absolute offset per box coordinate
  double dropout = 0.0;            // chance of losing a frame's detection
  bool keep_endpoints = false;     // never drop the first and last detection
  double false_positive_rate = 0.0;  // expected clutter boxes per frame
  double false_positive_score = 0.3;
};

struct SceneSpec {
  int width = 96;
  int height = 72;
  int frames = 10;
  Rgb background{110, 120, 130};
  int texture = 12;  // amplitude of the per-pixel color variation
  /// Later objects are drawn on top of earlier ones.
  std::vector<SyntheticObject> objects;
  DetectionNoise noise;
  int superpixel_cell = 6;
  std::uint64_t seed = 0;
};

struct SyntheticScene {
  std::vector<Image> frames;
  /// Exact forward flow: an object pixel moves with the visible object, every
  /// other pixel is static.
  std::vector<FlowField> flows;
  /// Per frame: 0 background, i + 1 for the visible part of object i.
  std::vector<LabelImage> ground_truth;
  /// Oversegmentation: grid cells of spec.superpixel_cell pixels, split where
  /// an object edge crosses a cell, so no superpixel straddles two regions.
  std::vector<LabelImage> superpixels;
  /// masks[i][t]: visible pixels of object i in frame t.
  std::vector<std::vector<PixelMask>> masks;
  /// Tight box of each object's visible pixels per frame.
  std::vector<BoxTrack> boxes;
  std::vector<Detection> detections;
  std::vector<std::string> categories;
  std::vector<std::string> warnings;
};

/// Renders a scene deterministically from spec (including spec.seed).
/// Overlapping objects with identical colors are allowed and reported in
/// warnings.
SyntheticScene synthesize_scene(const SceneSpec& spec);

/// Named scene recipes: "single", "crossing", "static". Throws InputError for
/// other names.
SceneSpec preset_scene(std::string_view name, std::uint64_t seed = 0);

}  // namespace vidseg

#endif  // VIDSEG_SYNTHETIC_HPP
