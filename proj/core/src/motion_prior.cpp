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
#include "vidseg/motion_prior.hpp"

#include <algorithm>
#include <cmath>

#include "vidseg/errors.hpp"

namespace vidseg {

void MotionPriorConfig::validate() const {
  if (!(boundary_threshold > 0.0)) throw InputError("boundary_threshold must be > 0");
  if (ray_directions != 4 && ray_directions != 8)
    throw InputError("ray_directions must be 4 or 8");
  if (!(smoothing_decay >= 0.0 && smoothing_decay < 1.0))
    throw InputError("smoothing_decay must lie in [0,1)");
  if (smoothing_window < 0) throw InputError("smoothing_window must be >= 0");
}

PixelMask motion_boundaries(const FlowField& flow, const MotionPriorConfig& cfg) {
  if (!flow.valid()) throw InputError("invalid flow field");
  const int w = flow.width, h = flow.height;
  PixelMask out(w, h, 0.0);
  const double limit = cfg.boundary_threshold * cfg.boundary_threshold;
  for (int y = 0; y < h; ++y) {
    const int ym = std::max(y - 1, 0), yp = std::min(y + 1, h - 1);
    for (int x = 0; x < w; ++x) {
      const int xm = std::max(x - 1, 0), xp = std::min(x + 1, w - 1);
      const double ux = (flow.u[flow.index(xp, y)] - flow.u[flow.index(xm, y)]) / 2.0;
      const double uy = (flow.u[flow.index(x, yp)] - flow.u[flow.index(x, ym)]) / 2.0;
      const double vx = (flow.v[flow.index(xp, y)] - flow.v[flow.index(xm, y)]) / 2.0;
      const double vy = (flow.v[flow.index(x, yp)] - flow.v[flow.index(x, ym)]) / 2.0;
      if (ux * ux + uy * uy + vx * vx + vy * vy > limit) out.at(x, y) = 1.0;
    }
  }
  return out;
}

PixelMask inside_outside_map(const PixelMask& boundaries, const MotionPriorConfig& cfg) {
  cfg.validate();
  static constexpr int kDirs[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                      {1, 1},  {-1, -1}, {1, -1}, {-1, 1}};
  const int w = boundaries.width(), h = boundaries.height();
  const auto n = boundaries.size();
  std::vector<int> votes(n, 0);
  std::vector<char> ahead(n);
  for (int d = 0; d < cfg.ray_directions; ++d) {
    const int dx = kDirs[d][0], dy = kDirs[d][1];
    // ahead[p]: a boundary pixel lies strictly beyond p along (dx, dy).
    // Sweep so that p + (dx, dy) is finished before p.
    const int y_begin = dy > 0 ? h - 1 : 0, y_end = dy > 0 ? -1 : h, y_step = dy > 0 ? -1 : 1;
    const int x_begin = dx > 0 ? w - 1 : 0, x_end = dx > 0 ? -1 : w, x_step = dx > 0 ? -1 : 1;
    for (int y = y_begin; y != y_end; y += y_step) {
      for (int x = x_begin; x != x_end; x += x_step) {
        const int nx = x + dx, ny = y + dy;
        char hit = 0;
        if (nx >= 0 && ny >= 0 && nx < w && ny < h) {
          const auto q = boundaries.index(nx, ny);
          hit = boundaries[q] > 0.5 || ahead[q];
        }
        const auto p = boundaries.index(x, y);
        ahead[p] = hit;
        votes[p] += hit;
      }
    }
  }
  PixelMask out(w, h, 0.0);
  for (std::size_t p = 0; p < n; ++p)
    if (2 * votes[p] > cfg.ray_directions) out[p] = 1.0;
  return out;
}

PixelMask restrict_map(const PixelMask& m, const BoundingBox& box) {
  PixelMask out(m.width(), m.height(), 0.0);
  const int x0 = std::max(box.x_min(), 0), x1 = std::min(box.x_max(), m.width());
  const int y0 = std::max(box.y_min(), 0), y1 = std::min(box.y_max(), m.height());
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) out.at(x, y) = m.at(x, y);
  return out;
}

PixelMask warp_forward(const PixelMask& m, const FlowField& flow) {
  PixelMask out(m.width(), m.height(), 0.0);
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) {
      const double v = m.at(x, y);
      if (v <= 0.0) continue;
      int tx = 0, ty = 0;
      if (flow_target(flow, x, y, tx, ty)) out.at(tx, ty) = std::max(out.at(tx, ty), v);
    }
  return out;
}

PixelMask warp_backward(const PixelMask& next, const FlowField& flow) {
  PixelMask out(next.width(), next.height(), 0.0);
  for (int y = 0; y < next.height(); ++y)
    for (int x = 0; x < next.width(); ++x) {
      int tx = 0, ty = 0;
      if (flow_target(flow, x, y, tx, ty)) out.at(x, y) = next.at(tx, ty);
    }
  return out;
}

std::vector<PixelMask> propagate_prior(std::span<const PixelMask> evidence,
                                       std::span<const FlowField> flows,
                                       int first, int last,
                                       const MotionPriorConfig& cfg) {
  cfg.validate();
  const int frames = static_cast<int>(evidence.size());
  if (frames == 0) return {};
  if (static_cast<int>(flows.size()) + 1 < frames) {
    throw InputError("propagate_prior: " + std::to_string(frames) +
                     " evidence frames need " + std::to_string(frames - 1) +
                     " flows, got " + std::to_string(flows.size()));
  }
  const int w = evidence[0].width(), h = evidence[0].height();
  for (int t = 0; t < frames; ++t) {
    if (evidence[t].width() != w || evidence[t].height() != h)
      throw InputError("evidence frame " + std::to_string(t) + " has wrong size");
  }
  for (int t = 0; t + 1 < frames; ++t) {
    if (flows[t].width != w || flows[t].height != h)
      throw InputError("flow " + std::to_string(t) + " has wrong size");
  }
  first = std::max(first, 0);
  last = std::min(last, frames - 1);

  std::vector<PixelMask> out(frames, PixelMask(w, h, 0.0));
  auto accumulate = [](PixelMask& dst, const PixelMask& src, double scale) {
    for (std::size_t i = 0; i < dst.size(); ++i)
      dst[i] = std::max(dst[i], std::clamp(scale * src[i], 0.0, 1.0));
  };
  for (int s = first; s <= last; ++s) {
    accumulate(out[s], evidence[s], 1.0);
    double scale = 1.0;
    PixelMask carried = evidence[s];
    for (int k = 1; k <= cfg.smoothing_window && s + k < frames; ++k) {
      scale *= cfg.smoothing_decay;
      if (scale == 0.0) break;
      carried = warp_forward(carried, flows[s + k - 1]);
      accumulate(out[s + k], carried, scale);
    }
    scale = 1.0;
    carried = evidence[s];
    for (int k = 1; k <= cfg.smoothing_window && s - k >= 0; ++k) {
      scale *= cfg.smoothing_decay;
      if (scale == 0.0) break;
      carried = warp_backward(carried, flows[s - k]);
      accumulate(out[s - k], carried, scale);
    }
  }
  return out;
}

}  // namespace vidseg
