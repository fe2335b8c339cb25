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
#include "vidseg/tube_linker.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vidseg/correlation.hpp"
#include "vidseg/errors.hpp"
#include "vidseg/parallel.hpp"

namespace vidseg {

LinkGraph::LinkGraph(std::vector<Detection> detections) {
  std::vector<int> order(detections.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return detections[a].frame < detections[b].frame;
  });
  nodes_.reserve(order.size());
  for (int i : order) {
    validate(detections[i]);
    nodes_.push_back(std::move(detections[i]));
  }
  input_index_ = std::move(order);
  edges_.resize(nodes_.size());
}

std::size_t LinkGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& e : edges_) n += e.size();
  return n;
}

void LinkGraph::add_edge(int i, int j, ExtReal weight) {
  if (nodes_[i].frame >= nodes_[j].frame) {
    throw InputError("link edges must go forward in time");
  }
  if (weight.is_neg_inf()) return;
  edges_[i].push_back({j, weight.value()});
}

LinkGraph build_link_graph(std::span<const Detection> detections,
                           const SimilarityContext& ctx,
                           const SimilarityConfig& cfg, int lookahead,
                           int threads) {
  if (lookahead < 1) throw InputError("lookahead must be >= 1");
  cfg.validate();
  LinkGraph g(std::vector<Detection>(detections.begin(), detections.end()));
  const int n = g.size();

  std::vector<std::vector<std::pair<int, ExtReal>>> weights(n);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t ui) {
    const int i = static_cast<int>(ui);
    const Detection& a = g.node(i);
    for (int j = i + 1; j < n; ++j) {
      const Detection& b = g.node(j);
      if (b.frame == a.frame) continue;
      if (b.frame - a.frame > lookahead) break;
      weights[i].emplace_back(j, composite_similarity(a, b, ctx, cfg).value);
    }
  });
  for (int i = 0; i < n; ++i)
    for (const auto& [j, w] : weights[i]) g.add_edge(i, j, w);
  return g;
}

namespace {

struct PathState {
  double score = 0.0;
  int start_frame = 0;
  int count = 0;
  int pred = -1;  // -1: entered from the source
  bool reached = false;
};

std::vector<int> trace(const std::vector<PathState>& dp, int end) {
  std::vector<int> path;
  for (int v = end; v >= 0; v = dp[v].pred) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

// Whether candidate (via pred, ending at end) beats the current best at its
// end node under the score / start / length / lexicographic order.
bool better(const std::vector<PathState>& dp, const PathState& cand, int cand_end,
            const PathState& cur, int cur_end) {
  if (cand.score != cur.score) return cand.score > cur.score;
  if (cand.start_frame != cur.start_frame) return cand.start_frame < cur.start_frame;
  if (cand.count != cur.count) return cand.count > cur.count;
  auto a = cand.pred >= 0 ? trace(dp, cand.pred) : std::vector<int>{};
  a.push_back(cand_end);
  auto b = cur.pred >= 0 ? trace(dp, cur.pred) : std::vector<int>{};
  b.push_back(cur_end);
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

LinkPath longest_path(const LinkGraph& g, std::span<const char> active) {
  const int n = g.size();
  auto is_active = [&](int i) { return active.empty() || active[i]; };

  std::vector<PathState> dp(n);
  for (int i = 0; i < n; ++i) {
    if (!is_active(i)) continue;
    dp[i] = {g.source_weight(i), g.node(i).frame, 1, -1, true};
  }
  for (int i = 0; i < n; ++i) {
    if (!dp[i].reached) continue;
    for (const auto& e : g.out_edges(i)) {
      if (!dp[e.to].reached) continue;
      const PathState cand{dp[i].score + e.weight, dp[i].start_frame,
                           dp[i].count + 1, i, true};
      if (better(dp, cand, e.to, dp[e.to], e.to)) dp[e.to] = cand;
    }
  }

  int best = -1;
  for (int i = 0; i < n; ++i) {
    if (!dp[i].reached) continue;
    if (best < 0 || better(dp, dp[i], i, dp[best], best)) best = i;
  }
  LinkPath out;
  if (best >= 0) {
    out.nodes = trace(dp, best);
    out.score = dp[best].score;
  }
  return out;
}

void LinkerConfig::validate() const {
  if (lookahead < 1) throw InputError("lookahead must be >= 1");
  if (!(tube_threshold >= 0.0)) throw InputError("tube_threshold must be >= 0");
  if (max_tubes < 0) throw InputError("max_tubes must be >= 0");
}

Tube path_to_tube(const LinkGraph& g, const LinkPath& path) {
  Tube t;
  if (path.nodes.empty()) return t;
  const Detection& first = g.node(path.nodes.front());
  const Detection& last = g.node(path.nodes.back());
  t.category = first.category;
  t.first_frame = first.frame;
  t.path_score = path.score;
  const auto len = static_cast<std::size_t>(last.frame - first.frame + 1);
  t.boxes.assign(len, first.box);
  t.provenance.assign(len, Provenance::kMissing);
  for (int v : path.nodes) {
    const Detection& d = g.node(v);
    const auto k = static_cast<std::size_t>(d.frame - first.frame);
    t.boxes[k] = d.box;
    t.provenance[k] = Provenance::kDetected;
    t.detection_ids.push_back(g.input_index(v));
  }
  // Placeholder boxes in gaps repeat the last detected box.
  for (std::size_t k = 1; k < len; ++k)
    if (t.provenance[k] == Provenance::kMissing) t.boxes[k] = t.boxes[k - 1];
  return t;
}

std::vector<Tube> extract_tubes(const LinkGraph& graph, const LinkerConfig& cfg) {
  cfg.validate();
  std::vector<Tube> tubes;
  std::vector<char> active(static_cast<std::size_t>(graph.size()), 1);
  while (static_cast<int>(tubes.size()) < cfg.max_tubes) {
    const LinkPath path = longest_path(graph, active);
    if (path.nodes.empty() || path.score < cfg.tube_threshold) break;
    for (int v : path.nodes) active[v] = 0;
    tubes.push_back(path_to_tube(graph, path));
  }
  std::stable_sort(tubes.begin(), tubes.end(), [](const Tube& a, const Tube& b) {
    return a.path_score > b.path_score;
  });
  return tubes;
}

std::vector<Tube> extract_tubes(std::span<const Detection> detections,
                                const SimilarityContext& ctx,
                                const SimilarityConfig& sim,
                                const LinkerConfig& cfg, int threads) {
  cfg.validate();
  const LinkGraph g = build_link_graph(detections, ctx, sim, cfg.lookahead, threads);
  return extract_tubes(g, cfg);
}

namespace {

BoundingBox track_step(std::span<const Image> frames, int from, int to,
                       const BoundingBox& box, int radius) {
  const Displacement d = correlate_box(frames[from], box, frames[to], radius);
  return box.translated(d.dx, d.dy);
}

BoundingBox blend(const BoundingBox& a, const BoundingBox& b, double w) {
  auto mix = [w](int p, int q) {
    return static_cast<int>(std::lround((1.0 - w) * p + w * q));
  };
  return {mix(a.x_min(), b.x_min()), mix(a.y_min(), b.y_min()),
          mix(a.x_max(), b.x_max()), mix(a.y_max(), b.y_max())};
}

}  // namespace

Tube interpolate_tube(const Tube& tube, std::span<const Image> frames,
                      int search_radius) {
  Tube out = tube;
  if (tube.is_dense()) return out;
  if (tube.last_frame() >= static_cast<int>(frames.size())) {
    throw InputError("missing image for frame " + std::to_string(tube.last_frame()));
  }
  const int n = tube.length();
  int left = 0;
  while (left < n) {
    int right = left + 1;
    while (right < n && tube.provenance[right] == Provenance::kMissing) ++right;
    if (right >= n) break;
    const int gap = right - left - 1;
    const int f0 = tube.first_frame + left;
    const int f1 = tube.first_frame + right;
    if (gap == 1) {
      out.boxes[left + 1] =
          track_step(frames, f0, f0 + 1, tube.boxes[left], search_radius);
      out.provenance[left + 1] = Provenance::kInterpolated;
    } else if (gap > 1) {
      std::vector<BoundingBox> fwd(gap + 2), bwd(gap + 2);
      fwd[0] = tube.boxes[left];
      for (int k = 1; k <= gap; ++k)
        fwd[k] = track_step(frames, f0 + k - 1, f0 + k, fwd[k - 1], search_radius);
      bwd[gap + 1] = tube.boxes[right];
      for (int k = gap; k >= 1; --k)
        bwd[k] = track_step(frames, f0 + k + 1, f0 + k, bwd[k + 1], search_radius);
      for (int k = 1; k <= gap; ++k) {
        out.boxes[left + k] = blend(fwd[k], bwd[k], static_cast<double>(k) / (gap + 1));
        out.provenance[left + k] = Provenance::kInterpolated;
      }
    }
    left = right;
  }
  return out;
}

std::vector<Tube> tube_nms(std::span<const Tube> tubes, double iou_threshold) {
  std::vector<int> order(tubes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (tubes[a].length() != tubes[b].length())
      return tubes[a].length() > tubes[b].length();
    return tubes[a].path_score > tubes[b].path_score;
  });
  std::vector<char> keep(tubes.size(), 0);
  std::vector<int> kept;
  for (int i : order) {
    const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](int k) {
      return tubes[k].category == tubes[i].category &&
             volumetric_iou(tubes[k], tubes[i]) > iou_threshold;
    });
    if (!suppressed) {
      keep[i] = 1;
      kept.push_back(i);
    }
  }
  std::vector<Tube> out;
  for (std::size_t i = 0; i < tubes.size(); ++i)
    if (keep[i]) out.push_back(tubes[i]);
  return out;
}

}  // namespace vidseg
