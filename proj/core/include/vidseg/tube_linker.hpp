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
#ifndef VIDSEG_TUBE_LINKER_HPP
#define VIDSEG_TUBE_LINKER_HPP

#include <span>
#include <vector>

#include "vidseg/detection.hpp"
#include "vidseg/ext_real.hpp"
#include "vidseg/image.hpp"
#include "vidseg/similarity.hpp"
#include "vidseg/tube.hpp"

namespace vidseg {

/// Detection DAG with an implicit source and sink.
///
/// Nodes are kept sorted by frame (stable w.r.t. input order), which is a
/// topological order since edges only go forward in time. The source enters
/// node i with weight score(i); every node leaves to the sink with weight 0.
class LinkGraph {
 public:
  struct Edge {
    int to;
    double weight;
  };

  LinkGraph() = default;
  explicit LinkGraph(std::vector<Detection> detections);

  int size() const { return static_cast<int>(nodes_.size()); }
  bool empty() const { return nodes_.empty(); }

  const Detection& node(int i) const { return nodes_[i]; }
  /// Position of node i in the list passed to the constructor.
  int input_index(int i) const { return input_index_[i]; }
  double source_weight(int i) const { return nodes_[i].score; }
  std::span<const Edge> out_edges(int i) const { return edges_[i]; }
  std::size_t edge_count() const;

  /// Adds i -> j. -inf weights are dropped. Throws InputError unless
  /// frame(i) < frame(j).
  void add_edge(int i, int j, ExtReal weight);

 private:
  std::vector<Detection> nodes_;
  std::vector<int> input_index_;
  std::vector<std::vector<Edge>> edges_;
};

/// Links every detection to the detections of the following `lookahead`
/// frames, weighting each edge by composite_similarity.
LinkGraph build_link_graph(std::span<const Detection> detections,
                           const SimilarityContext& ctx,
                           const SimilarityConfig& cfg, int lookahead = 20,
                           int threads = 1);

struct LinkPath {
  std::vector<int> nodes;  // graph node indices, in frame order
  double score = 0.0;
};

/// Best source-to-sink path in O(|V| + |E|).
///
/// Ties on score prefer the earlier start frame, then more nodes, then the
/// lexicographically smaller node sequence. Nodes with active[i] == false are
/// skipped; an empty mask means all nodes are active.
LinkPath longest_path(const LinkGraph& g, std::span<const char> active = {});

struct LinkerConfig {
  int lookahead = 20;
  double tube_threshold = 1.0;
  int max_tubes = 32;

  void validate() const;
};

/// Sparse tube from a path (frames between detections marked kMissing).
Tube path_to_tube(const LinkGraph& g, const LinkPath& path);

/// Repeated longest-path extraction with removal of the used detections,
/// until the best path scores below tube_threshold or max_tubes are found.
/// Tubes come out by descending path score.
std::vector<Tube> extract_tubes(std::span<const Detection> detections,
                                const SimilarityContext& ctx,
                                const SimilarityConfig& sim,
                                const LinkerConfig& cfg, int threads = 1);

/// Same as above on a prebuilt graph.
std::vector<Tube> extract_tubes(const LinkGraph& graph, const LinkerConfig& cfg);

/// Fills the kMissing frames of a tube by correlation tracking.
///
/// A one-frame gap is filled by tracking the previous box into the frame. For
/// longer gaps the boxes are tracked forward from the left end and backward
/// from the right end, and the two placements are blended linearly by temporal
/// position. Detected boxes are never changed.
Tube interpolate_tube(const Tube& tube, std::span<const Image> frames,
                      int search_radius = 32);

/// Volumetric non-maximum suppression over same-category tubes: of two tubes
/// with volumetric IoU > iou_threshold the longer survives (ties: higher
/// path score, then earlier position). Survivors keep their input order.
std::vector<Tube> tube_nms(std::span<const Tube> tubes, double iou_threshold = 0.5);

}  // namespace vidseg

#endif  // VIDSEG_TUBE_LINKER_HPP
