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
#ifndef VIDSEG_MOTION_PRIOR_HPP
#define VIDSEG_MOTION_PRIOR_HPP

#include <span>
#include <vector>

#include "vidseg/geometry.hpp"
#include "vidseg/image.hpp"

namespace vidseg {

struct MotionPriorConfig {
  double boundary_threshold = 1.0;  // flow-gradient norm, pixels per frame
  int ray_directions = 8;           // 4 or 8
  double smoothing_decay = 0.7;     // per-frame retention in [0, 1)
  int smoothing_window = 5;         // frames evidence may travel

  void validate() const;
};

/// Binary mask of pixels whose flow Jacobian (central differences, clamped at
/// the border) has Frobenius norm above cfg.boundary_threshold.
PixelMask motion_boundaries(const FlowField& flow, const MotionPriorConfig& cfg);

/// Binary inside-outside map: a pixel is inside when more than half of the
/// rays cast from it (axis directions, plus diagonals for 8 rays) meet a
/// boundary pixel before leaving the image.
PixelMask inside_outside_map(const PixelMask& boundaries, const MotionPriorConfig& cfg);

/// Zeroes everything outside box (box is clipped to the mask).
PixelMask restrict_map(const PixelMask& m, const BoundingBox& box);

/// Moves values forward along flow (frame t to t+1). Colliding values keep the
/// maximum; values leaving the frame are dropped.
PixelMask warp_forward(const PixelMask& m, const FlowField& flow);

/// Pulls values of frame t+1 back to frame t through the forward flow of t.
PixelMask warp_backward(const PixelMask& next, const FlowField& flow);

/// Temporal smoothing of per-frame evidence into a location prior.
///
/// evidence has one mask per video frame, flows one per consecutive pair.
/// Evidence counts only inside [first, last] (the tube interval). Frame t
/// receives the maximum over k = 0..smoothing_window of decay^k times the
/// evidence of frame t-k warped forward k steps, and likewise from t+k warped
/// backward. Output values lie in [0, 1]. Throws InputError on misaligned
/// sequence lengths.
std::vector<PixelMask> propagate_prior(std::span<const PixelMask> evidence,
                                       std::span<const FlowField> flows,
                                       int first, int last,
                                       const MotionPriorConfig& cfg);

}  // namespace vidseg

#endif  // VIDSEG_MOTION_PRIOR_HPP
