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
#ifndef VIDSEG_TUBE_HPP
#define VIDSEG_TUBE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vidseg/geometry.hpp"

namespace vidseg {

enum class Provenance : std::uint8_t { kDetected, kInterpolated, kMissing };

/// Per-frame box track of one object over the contiguous interval
/// [first_frame, last_frame()]. A sparse tube (straight out of the linker)
/// marks frames without a box as kMissing; interpolate_tube fills them.
struct Tube {
  std::string category;
  int first_frame = 0;
  std::vector<BoundingBox> boxes;
  std::vector<Provenance> provenance;
  double path_score = 0.0;
  /// Indices (into the linker's input list) of the detections on the path.
  std::vector<int> detection_ids;

  int length() const { return static_cast<int>(boxes.size()); }
  int last_frame() const { return first_frame + length() - 1; }
  bool covers(int frame) const {
    return frame >= first_frame && frame <= last_frame();
  }
  bool is_dense() const;
  /// Box at an absolute frame, if the tube has one there.
  std::optional<BoundingBox> box_at(int frame) const;
};

/// Sum of per-frame box intersections over shared frames divided by the sum
/// of per-frame union areas over all frames either tube covers.
double volumetric_iou(const Tube& a, const Tube& b);

}  // namespace vidseg

#endif  // VIDSEG_TUBE_HPP
