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
#ifndef VIDSEG_SUPERPIXEL_GRAPH_HPP
#define VIDSEG_SUPERPIXEL_GRAPH_HPP

#include <span>
#include <vector>

#include <Eigen/Core>

#include "vidseg/appearance.hpp"
#include "vidseg/geometry.hpp"
#include "vidseg/image.hpp"
#include "vidseg/potts.hpp"

namespace vidseg {

struct Superpixel {
  int id = 0;     // global node id
  int frame = 0;
  int local_label = 0;  // id in the frame's label map
  std::vector<int> pixels;  // row-major pixel indices within the frame
  Point2d centroid;
  Eigen::Vector3d mean_color = Eigen::Vector3d::Zero();

  int area() const { return static_cast<int>(pixels.size()); }
};

struct EdgeWeightConfig {
  double sigma_color = 30.0;
  double spatial_weight = 1.0;
  double temporal_weight = 2.0;

  void validate() const;
};

/// Spatio-temporal superpixel graph. Nodes are numbered frame by frame, and
/// within a frame by ascending label-map id.
struct SuperpixelVideoGraph {
  int width = 0;
  int height = 0;
  std::vector<Superpixel> nodes;
  std::vector<PottsEdge> spatial_edges;   // same-frame neighbours
  std::vector<PottsEdge> temporal_edges;  // frame t -> t+1 via flow
  std::vector<LabelImage> node_maps;      // per frame: pixel -> node id

  int size() const { return static_cast<int>(nodes.size()); }
  int num_frames() const { return static_cast<int>(node_maps.size()); }
  std::vector<PottsEdge> edges() const;
};

/// Builds the graph. Spatial weight: spatial_weight * exp(-|dColor|^2 /
/// (2 sigma^2)) * shared 4-connected boundary length. Temporal weight:
/// temporal_weight * (pixels of v1 whose rounded flow target falls in v2) /
/// area(v1); zero-match pairs get no edge. Label ids must be non-negative.
SuperpixelVideoGraph build_superpixel_graph(std::span<const LabelImage> label_maps,
                                            std::span<const Image> frames,
                                            std::span<const FlowField> flows,
                                            const EdgeWeightConfig& cfg = {});

/// Regular grid of square cells (the last row/column may be narrower).
LabelImage grid_superpixels(int width, int height, int cell);

/// Unary costs for labels 0 (background) .. K.
///
/// Location term: -log(max(mean prior over the node, floor)); the background
/// prior of a pixel is 1 - max over objects. Appearance term: minus the mean
/// log-density of the node's pixels under the label's model, shifted so that
/// the cheapest label of each node costs 0. priors[k][t] is object k's prior
/// in frame t. Throws InputError if models and priors disagree in count.
UnaryTable unary_potentials(const SuperpixelVideoGraph& graph,
                            std::span<const std::vector<PixelMask>> priors,
                            const AppearanceModels& models,
                            std::span<const Image> frames,
                            double prior_floor = 1e-4);

/// Label image of each frame from a node labeling.
std::vector<LabelImage> labeling_to_maps(const SuperpixelVideoGraph& graph,
                                         const Labeling& labels);

}  // namespace vidseg

#endif  // VIDSEG_SUPERPIXEL_GRAPH_HPP
