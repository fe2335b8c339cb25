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
#ifndef VIDSEG_GRABCUT_HPP
#define VIDSEG_GRABCUT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "vidseg/geometry.hpp"
#include "vidseg/gmm.hpp"
#include "vidseg/image.hpp"

namespace vidseg {

struct GrabcutConfig {
  int iterations = 5;
  int gmm_components = 5;
  double pairwise_gamma = 50.0;
  double shrink_margin = 0.1;  // fraction of box width/height
  std::uint64_t seed = 0;

  void validate() const;
};

/// Diagnostics of one grabcut_box run.
struct GrabcutTrace {
  /// Total energy (unary + pairwise over box pixels) after each outer
  /// iteration, evaluated with the models that iteration used.
  std::vector<double> energy;
  /// Set when foreground and background models could not be told apart and
  /// the initialization was returned.
  bool fallback = false;
};

/// The initial foreground: box shrunk by cfg.shrink_margin on every side.
BoundingBox grabcut_init_box(const BoundingBox& box, const GrabcutConfig& cfg);

/// Background band around box with roughly the box's area, clipped to the
/// image.
BoundingBox grabcut_band(const BoundingBox& box, int image_width, int image_height);

/// Iterated GMM + graph-cut foreground extraction restricted to box.
///
/// Output is a binary mask (1 = foreground) that is empty outside the box. The
/// cut uses unaries -log p(color | model) and 4-neighbour pairwise terms
/// gamma * exp(-beta |dRGB|^2), beta = 1 / (2 mean |dRGB|^2) over the box.
/// When the two models score every box pixel identically the shrunk
/// initialization box is returned. Throws BoundsError if box leaves img.
PixelMask grabcut_box(const Image& img, const BoundingBox& box,
                      const GrabcutConfig& cfg, GrabcutTrace* trace = nullptr);

}  // namespace vidseg

#endif  // VIDSEG_GRABCUT_HPP
