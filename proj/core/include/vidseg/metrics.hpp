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
#ifndef VIDSEG_METRICS_HPP
#define VIDSEG_METRICS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vidseg/geometry.hpp"
#include "vidseg/image.hpp"
#include "vidseg/tube.hpp"

namespace vidseg {

/// An object counts as segmented at F >= 0.75. F values that miss the
/// threshold by rounding noise (up to kFmeasureSlack) still count.
inline constexpr double kFmeasureThreshold = 0.75;
inline constexpr double kFmeasureSlack = 1e-9;

struct IouReport {
  /// Indexed by ground-truth label - 1. Empty when the object never appears
  /// in an annotated frame of either sequence.
  std::vector<std::optional<double>> per_object;
  std::map<std::string, double> per_category;
  std::optional<double> average;
};

/// IoU of each ground-truth object (labels 1..K, 0 is background) against the
/// predicted pixels carrying the same label, accumulated over the annotated
/// frames. An empty annotated mask means every frame is annotated. categories
/// maps label - 1 to a category name; missing entries fall under "".
IouReport eval_iou(std::span<const LabelImage> predicted,
                   std::span<const LabelImage> ground_truth,
                   std::span<const char> annotated = {},
                   std::span<const std::string> categories = {});

double f_measure(double precision, double recall);
bool counts_as_segmented(double f);

struct FmeasurePair {
  int predicted = 0;  // predicted label
  int truth = 0;      // ground-truth label
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

struct FmeasureReport {
  /// One entry per ground-truth object in label order; predicted = 0 when the
  /// object is left unassigned.
  std::vector<FmeasurePair> pairs;
  int segmented = 0;
};

/// Matches predicted objects one-to-one to ground-truth objects so that the
/// summed F is maximal, then counts the pairs with F >= 0.75. Background
/// (label 0) takes part in neither.
FmeasureReport eval_fmeasure(std::span<const LabelImage> predicted,
                             std::span<const LabelImage> ground_truth);

/// Row-to-column assignment maximizing the total score of a rectangular
/// matrix. Rows left unassigned (more rows than columns) map to -1.
std::vector<int> max_assignment(const std::vector<std::vector<double>>& score);

/// Relabels predicted objects so that each carries the label of the
/// ground-truth object it is assigned to by eval_fmeasure. Predicted objects
/// without a partner become background.
std::vector<LabelImage> align_labels(std::span<const LabelImage> predicted,
                                     std::span<const LabelImage> ground_truth);

/// Ground-truth box track: one optional box per video frame.
using BoxTrack = std::vector<std::optional<BoundingBox>>;

/// Mean per-frame box IoU of a tube against a track over the frames where
/// the track has a box; frames the tube does not cover score 0. Empty when
/// the track has no boxes.
std::optional<double> tube_box_iou(const Tube& tube, const BoxTrack& truth);

/// Mean over ground-truth tracks of the best tube_box_iou any tube reaches on
/// that track (0 when no tube overlaps it). Tracks without boxes are skipped.
double tube_set_iou(std::span<const Tube> tubes, std::span<const BoxTrack> truth);

/// Number of times a tube's best-overlapping ground-truth track changes
/// between consecutive frames, summed over tubes. A frame is attributed to a
/// track when their box IoU exceeds min_iou.
int identity_switches(std::span<const Tube> tubes, std::span<const BoxTrack> truth,
                      double min_iou = 0.3);

}  // namespace vidseg

#endif  // VIDSEG_METRICS_HPP
