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
#ifndef VIDSEG_SIMILARITY_HPP
#define VIDSEG_SIMILARITY_HPP

#include <map>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

#include "vidseg/detection.hpp"
#include "vidseg/ext_real.hpp"
#include "vidseg/histogram.hpp"
#include "vidseg/image.hpp"

namespace vidseg {

/// Switches and constants for the pairwise detection similarity. Each use_*
/// flag removes its factor from the product when false (ablation).
struct SimilarityConfig {
  bool use_score = true;
  bool use_category = true;
  bool use_app = true;
  bool use_vol = true;
  bool use_side = true;
  bool use_match = true;
  bool use_center = true;
  double app_threshold = 0.8;
  double center_decay = 0.1;
  int search_radius = 32;

  /// Throws InputError on out-of-range constants.
  void validate() const;
};

/// Factors of one similarity evaluation. Disabled terms stay at 1.
struct TermBreakdown {
  ExtReal score = 1.0;
  ExtReal category = 1.0;
  ExtReal app = 1.0;
  ExtReal vol = 1.0;
  ExtReal side = 1.0;
  ExtReal match = 1.0;
  ExtReal center = 1.0;
};

struct SimilarityScore {
  ExtReal value;
  TermBreakdown terms;
};

/// 1 for equal categories, -inf otherwise.
ExtReal s_category(const Detection& a, const Detection& b);

/// min of the two area ratios.
double s_vol(const BoundingBox& a, const BoundingBox& b);

/// min over height and width of the symmetric per-dimension ratio.
double s_side(const BoundingBox& a, const BoundingBox& b);

/// Fraction of b's pixels hit by a's pixels carried along the composed flow.
///
/// flows[t] maps frame t to t+1. Each hop rounds to the nearest pixel and
/// drops pixels that leave the frame. Requires a.frame < b.frame and flows for
/// every frame in [a.frame, b.frame); throws InputError otherwise.
double s_match(const Detection& a, const Detection& b,
               std::span<const FlowField> flows);

/// Center of a's box moved by the best correlation offset of its patch from
/// img_a into img_b.
Point2d propagate_center(const Detection& a, const Image& img_a,
                         const Image& img_b, const SimilarityConfig& cfg);

/// 1 / (1 + decay * |c_p - c|).
double s_center(Point2d propagated, Point2d actual, const SimilarityConfig& cfg);

/// Cosine of the two histograms, or -inf when it is <= cfg.app_threshold.
/// Throws InputError for an empty histogram.
ExtReal s_app(const ColorHistogram& a, const ColorHistogram& b,
              const SimilarityConfig& cfg);

/// Plain cosine similarity of two histograms.
double histogram_cosine(const ColorHistogram& a, const ColorHistogram& b);

/// Frames and flows a similarity evaluation may read from, with memoized
/// histograms and propagated centers. Lookups are thread-safe.
class SimilarityContext {
 public:
  SimilarityContext() = default;
  SimilarityContext(std::span<const Image> frames,
                    std::span<const FlowField> flows);

  std::span<const Image> frames() const { return frames_; }
  std::span<const FlowField> flows() const { return flows_; }

  const Image& frame(int t) const;
  ColorHistogram histogram(const Detection& d) const;
  Point2d propagated_center(const Detection& a, int target_frame,
                            const SimilarityConfig& cfg) const;

 private:
  using BoxKey = std::tuple<int, int, int, int, int>;
  using CenterKey = std::tuple<int, int, int, int, int, int, int>;

  std::span<const Image> frames_;
  std::span<const FlowField> flows_;
  mutable std::mutex mutex_;
  mutable std::map<BoxKey, ColorHistogram> histograms_;
  mutable std::map<CenterKey, Point2d> centers_;
};

/// score(b) times every enabled term; -inf absorbs. Terms after the first -inf
/// are not evaluated.
SimilarityScore composite_similarity(const Detection& a, const Detection& b,
                                     const SimilarityContext& ctx,
                                     const SimilarityConfig& cfg);

}  // namespace vidseg

#endif  // VIDSEG_SIMILARITY_HPP
