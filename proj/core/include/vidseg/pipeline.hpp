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
#ifndef VIDSEG_PIPELINE_HPP
#define VIDSEG_PIPELINE_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "vidseg/config.hpp"
#include "vidseg/detection.hpp"
#include "vidseg/image.hpp"
#include "vidseg/tube.hpp"
#include "vidseg/tube_merge.hpp"

namespace vidseg {

/// Everything the pipeline reads: one image and superpixel map per frame, one
/// flow field per consecutive frame pair, and the detections.
struct VideoInputs {
  std::vector<Image> frames;
  std::vector<FlowField> flows;
  std::vector<LabelImage> superpixels;
  std::vector<Detection> detections;
};

/// Throws InputError naming the first offending frame. With
/// require_superpixels false the superpixel maps may be absent.
void validate_inputs(const VideoInputs& in, bool require_superpixels = true);

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct PipelineReport {
  std::vector<StageTiming> stages;
  double total_seconds = 0.0;
  int threads = 1;

  std::string to_json() const;
};

/// Linking, gap interpolation and volumetric NMS.
std::vector<Tube> run_tracking(const VideoInputs& in, const PipelineConfig& cfg,
                               PipelineReport* report = nullptr);

struct PipelineResult {
  /// Tubes after NMS and merging; tube i carries label i + 1.
  std::vector<Tube> tubes;
  /// Indices into the post-NMS tube list fused into each output tube.
  std::vector<std::vector<int>> merged_from;
  std::vector<PriorSequence> priors;
  /// Per frame: 0 background, i + 1 for tube i.
  std::vector<LabelImage> labels;
  double energy = 0.0;
  PipelineReport report;
};

/// Full segmentation: tracking, inside-outside maps restricted to the tubes,
/// box foregrounds, location priors, tube merging, appearance models,
/// superpixel graph and energy minimization.
PipelineResult run_pipeline(const VideoInputs& in, const PipelineConfig& cfg);

/// Scene directory layout:
///   frames/NNNNN.ppm (or .png), flow/NNNNN.flo, superpixels/NNNNN.pgm,
///   detections.txt
/// Directories that do not exist load as empty sequences.
VideoInputs load_video_dir(const std::filesystem::path& dir);
void save_video_dir(const std::filesystem::path& dir, const VideoInputs& in);

/// Numbered PGM label maps of a directory, in file-name order.
std::vector<LabelImage> load_label_dir(const std::filesystem::path& dir);
void save_label_dir(const std::filesystem::path& dir, const std::vector<LabelImage>& maps,
                    bool force_16bit = false);

/// Writes labels/NNNNN.pgm, tubes.json and manifest.json under dir.
void save_segmentation(const std::filesystem::path& dir, const PipelineResult& result,
                       const PipelineConfig& cfg);

/// Five-digit zero-padded frame file name.
std::string frame_file_name(int frame, const char* extension);

}  // namespace vidseg

#endif  // VIDSEG_PIPELINE_HPP
