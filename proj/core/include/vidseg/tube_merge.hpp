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
#ifndef VIDSEG_TUBE_MERGE_HPP
#define VIDSEG_TUBE_MERGE_HPP

#include <span>
#include <vector>

#include "vidseg/image.hpp"
#include "vidseg/tube.hpp"

namespace vidseg {

/// One location prior mask per video frame.
using PriorSequence = std::vector<PixelMask>;

/// Cosine similarity of two priors over the frames where both carry mass.
/// 0 when they share no such frame.
double prior_correlation(const PriorSequence& a, const PriorSequence& b);

struct MergeResult {
  std::vector<Tube> tubes;
  std::vector<PriorSequence> priors;
  /// Input indices fused into each output tube, ascending.
  std::vector<std::vector<int>> groups;
};

/// Fuses same-category tubes whose priors correlate at >= threshold.
///
/// Fusion is transitive (connected components) and repeated until no pair of
/// outputs qualifies, so the result is a fixed point. A fused tube takes the
/// per-frame union box of its members (frames between members are linearly
/// interpolated), the best member's path score, and the pixelwise maximum of
/// the priors. Output order follows each group's smallest input index.
MergeResult merge_tubes(std::span<const Tube> tubes,
                        std::span<const PriorSequence> priors,
                        double threshold = 0.5);

}  // namespace vidseg

#endif  // VIDSEG_TUBE_MERGE_HPP
