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
#include "vidseg/superpixel_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "vidseg/errors.hpp"

namespace vidseg {

void EdgeWeightConfig::validate() const {
  if (!(sigma_color > 0.0)) throw InputError("sigma_color must be > 0");
  if (spatial_weight < 0.0 || temporal_weight < 0.0)
    throw InputError("edge weights must be non-negative");
}

std::vector<PottsEdge> SuperpixelVideoGraph::edges() const {
  std::vector<PottsEdge> all = spatial_edges;
  all.insert(all.end(), temporal_edges.begin(), temporal_edges.end());
  return all;
}

LabelImage grid_superpixels(int width, int height, int cell) {
  if (cell < 1) throw InputError("superpixel cell size must be >= 1");
  LabelImage out(width, height);
  const int cols = (width + cell - 1) / cell;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) out.at(x, y) = (y / cell) * cols + x / cell;
  return out;
}

SuperpixelVideoGraph build_superpixel_graph(std::span<const LabelImage> label_maps,
                                            std::span<const Image> frames,
                                            std::span<const FlowField> flows,
                                            const EdgeWeightConfig& cfg) {
  cfg.validate();
  if (label_maps.size() != frames.size()) {
    throw InputError("got " + std::to_string(label_maps.size()) + " superpixel maps for " +
                     std::to_string(frames.size()) + " frames");
  }
  SuperpixelVideoGraph g;
  if (frames.empty()) return g;
  g.width = frames[0].width();
  g.height = frames[0].height();
  if (flows.size() + 1 < frames.size()) {
    throw InputError("missing flow for frame " + std::to_string(flows.size()));
  }

  for (std::size_t t = 0; t < frames.size(); ++t) {
    const LabelImage& lm = label_maps[t];
    const Image& img = frames[t];
    if (img.width() != g.width || img.height() != g.height) {
      throw InputError("frame " + std::to_string(t) + " has a different size");
    }
    if (lm.width() != g.width || lm.height() != g.height) {
      throw InputError("superpixel map of frame " + std::to_string(t) +
                       " does not match the image size");
    }
    std::map<int, std::vector<int>> members;
    for (std::size_t p = 0; p < lm.size(); ++p) {
      if (lm[p] < 0) {
        throw InputError("negative superpixel id in frame " + std::to_string(t));
      }
      members[lm[p]].push_back(static_cast<int>(p));
    }
    LabelImage node_map(g.width, g.height);
    for (auto& [label, pixels] : members) {
      Superpixel sp;
      sp.id = g.size();
      sp.frame = static_cast<int>(t);
      sp.local_label = label;
      double cx = 0.0, cy = 0.0;
      for (int p : pixels) {
        cx += p % g.width;
        cy += p / g.width;
        sp.mean_color += to_vec(img.pixels()[p]);
        node_map[p] = sp.id;
      }
      const double a = static_cast<double>(pixels.size());
      sp.centroid = {cx / a, cy / a};
      sp.mean_color /= a;
      sp.pixels = std::move(pixels);
      g.nodes.push_back(std::move(sp));
    }
    g.node_maps.push_back(std::move(node_map));
  }

  const double inv_two_sigma_sq = 1.0 / (2.0 * cfg.sigma_color * cfg.sigma_color);
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const LabelImage& nm = g.node_maps[t];
    std::map<std::pair<int, int>, int> boundary;
    for (int y = 0; y < g.height; ++y)
      for (int x = 0; x < g.width; ++x) {
        const int a = nm.at(x, y);
        if (x + 1 < g.width && nm.at(x + 1, y) != a)
          ++boundary[std::minmax(a, nm.at(x + 1, y))];
        if (y + 1 < g.height && nm.at(x, y + 1) != a)
          ++boundary[std::minmax(a, nm.at(x, y + 1))];
      }
    for (const auto& [pair, length] : boundary) {
      const double d2 =
          (g.nodes[pair.first].mean_color - g.nodes[pair.second].mean_color).squaredNorm();
      g.spatial_edges.push_back(
          {pair.first, pair.second,
           cfg.spatial_weight * std::exp(-d2 * inv_two_sigma_sq) * length});
    }
  }

  for (std::size_t t = 0; t + 1 < frames.size(); ++t) {
    const FlowField& f = flows[t];
    if (f.width != g.width || f.height != g.height || !f.valid()) {
      throw InputError("flow of frame " + std::to_string(t) + " does not match the image size");
    }
    const LabelImage& now = g.node_maps[t];
    const LabelImage& next = g.node_maps[t + 1];
    std::map<std::pair<int, int>, int> matches;
    for (int y = 0; y < g.height; ++y)
      for (int x = 0; x < g.width; ++x) {
        int tx = 0, ty = 0;
        if (flow_target(f, x, y, tx, ty)) ++matches[{now.at(x, y), next.at(tx, ty)}];
      }
    for (const auto& [pair, count] : matches) {
      g.temporal_edges.push_back(
          {pair.first, pair.second,
           cfg.temporal_weight * count / static_cast<double>(g.nodes[pair.first].area())});
    }
  }
  return g;
}

UnaryTable unary_potentials(const SuperpixelVideoGraph& graph,
                            std::span<const std::vector<PixelMask>> priors,
                            const AppearanceModels& models,
                            std::span<const Image> frames, double prior_floor) {
  const int objects = static_cast<int>(priors.size());
  if (static_cast<int>(models.objects.size()) != objects) {
    throw InputError("got " + std::to_string(models.objects.size()) +
                     " appearance models for " + std::to_string(objects) + " objects");
  }
  if (static_cast<int>(frames.size()) < graph.num_frames()) {
    throw InputError("missing image for frame " + std::to_string(frames.size()));
  }
  for (int k = 0; k < objects; ++k) {
    if (static_cast<int>(priors[k].size()) < graph.num_frames()) {
      throw InputError("prior of object " + std::to_string(k + 1) + " is missing frames");
    }
  }
  const int labels = objects + 1;
  UnaryTable table(graph.size(), labels, 0.0);

  // Per-model log-density cache keyed by packed RGB.
  std::vector<std::unordered_map<std::uint32_t, double>> cache(labels);
  auto model_of = [&](int l) -> const Gmm& {
    return l == 0 ? models.background : models.objects[l - 1];
  };
  auto score = [&](int l, Rgb c) {
    const std::uint32_t key = (std::uint32_t(c.r) << 16) | (std::uint32_t(c.g) << 8) | c.b;
    auto [it, inserted] = cache[l].try_emplace(key, 0.0);
    if (inserted) it->second = gmm_score(model_of(l), c);
    return it->second;
  };

  std::vector<double> prior_sum(labels), app_sum(labels);
  for (const Superpixel& sp : graph.nodes) {
    std::fill(prior_sum.begin(), prior_sum.end(), 0.0);
    std::fill(app_sum.begin(), app_sum.end(), 0.0);
    const Image& img = frames[sp.frame];
    for (int p : sp.pixels) {
      double most = 0.0;
      for (int k = 0; k < objects; ++k) {
        const double v = priors[k][sp.frame][p];
        prior_sum[k + 1] += v;
        most = std::max(most, v);
      }
      prior_sum[0] += 1.0 - most;
      const Rgb c = img.pixels()[p];
      for (int l = 0; l < labels; ++l) app_sum[l] += score(l, c);
    }
    const double area = sp.area();
    double best_app = -std::numeric_limits<double>::infinity();
    for (int l = 0; l < labels; ++l) best_app = std::max(best_app, app_sum[l] / area);
    for (int l = 0; l < labels; ++l) {
      const double location = -std::log(std::max(prior_sum[l] / area, prior_floor));
      const double appearance = best_app - app_sum[l] / area;
      table(sp.id, l) = location + appearance;
    }
  }
  return table;
}

std::vector<LabelImage> labeling_to_maps(const SuperpixelVideoGraph& graph,
                                         const Labeling& labels) {
  if (static_cast<int>(labels.size()) != graph.size()) {
    throw InputError("labeling size does not match the graph");
  }
  std::vector<LabelImage> out;
  out.reserve(graph.node_maps.size());
  for (const LabelImage& nm : graph.node_maps) {
    LabelImage lm(nm.width(), nm.height());
    for (std::size_t p = 0; p < nm.size(); ++p) lm[p] = labels[nm[p]];
    out.push_back(std::move(lm));
  }
  return out;
}

}  // namespace vidseg
