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
#include "vidseg/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vidseg/correlation.hpp"
#include "vidseg/errors.hpp"

namespace vidseg {

void SimilarityConfig::validate() const {
  if (!(app_threshold >= 0.0 && app_threshold <= 1.0))
    throw InputError("app_threshold must lie in [0,1]");
  if (!(center_decay > 0.0)) throw InputError("center_decay must be positive");
  if (search_radius < 1) throw InputError("search_radius must be >= 1");
}

ExtReal s_category(const Detection& a, const Detection& b) {
  return a.category == b.category ? ExtReal(1.0) : ExtReal::neg_inf();
}

namespace {

double ratio_min(double p, double q) { return std::min(p / q, q / p); }

}  // namespace

double s_vol(const BoundingBox& a, const BoundingBox& b) {
  return ratio_min(static_cast<double>(a.area()), static_cast<double>(b.area()));
}

double s_side(const BoundingBox& a, const BoundingBox& b) {
  return std::min(ratio_min(a.height(), b.height()), ratio_min(a.width(), b.width()));
}

double s_match(const Detection& a, const Detection& b,
               std::span<const FlowField> flows) {
  if (a.frame >= b.frame) {
    throw InputError("s_match requires a.frame < b.frame");
  }
  if (static_cast<std::size_t>(b.frame) > flows.size()) {
    throw InputError("missing flow for frame " + std::to_string(flows.size()));
  }
  for (int t = a.frame; t < b.frame; ++t) {
    if (!flows[t].valid()) {
      throw InputError("missing flow for frame " + std::to_string(t));
    }
  }
  const BoundingBox& target = b.box;
  std::vector<char> hit(static_cast<std::size_t>(target.area()), 0);
  std::int64_t matches = 0;
  for (int qy = a.box.y_min(); qy < a.box.y_max(); ++qy) {
    for (int qx = a.box.x_min(); qx < a.box.x_max(); ++qx) {
      int x = qx, y = qy;
      bool alive = true;
      for (int t = a.frame; t < b.frame && alive; ++t) {
        const FlowField& f = flows[t];
        if (x < 0 || y < 0 || x >= f.width || y >= f.height) {
          alive = false;
          break;
        }
        int tx = 0, ty = 0;
        alive = flow_target(f, x, y, tx, ty);
        x = tx;
        y = ty;
      }
      if (!alive || !target.contains(x, y)) continue;
      char& slot = hit[static_cast<std::size_t>(y - target.y_min()) * target.width() +
                       (x - target.x_min())];
      if (!slot) {
        slot = 1;
        ++matches;
      }
    }
  }
  return static_cast<double>(matches) / static_cast<double>(target.area());
}

Point2d propagate_center(const Detection& a, const Image& img_a,
                         const Image& img_b, const SimilarityConfig& cfg) {
  const Displacement d = correlate_box(img_a, a.box, img_b, cfg.search_radius);
  const Point2d c = box_center(a.box);
  return {c.x + d.dx, c.y + d.dy};
}

double s_center(Point2d propagated, Point2d actual, const SimilarityConfig& cfg) {
  return 1.0 / (1.0 + cfg.center_decay * distance(propagated, actual));
}

double histogram_cosine(const ColorHistogram& a, const ColorHistogram& b) {
  if (a.total == 0 || b.total == 0) {
    throw InputError("cosine of an empty histogram is undefined");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (int i = 0; i < kHistogramBins; ++i) {
    const double x = a.bins[i], y = b.bins[i];
    dot += x * y;
    na += x * x;
    nb += y * y;
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

ExtReal s_app(const ColorHistogram& a, const ColorHistogram& b,
              const SimilarityConfig& cfg) {
  const double c = histogram_cosine(a, b);
  if (c <= cfg.app_threshold) return ExtReal::neg_inf();
  return c;
}

SimilarityContext::SimilarityContext(std::span<const Image> frames,
                                     std::span<const FlowField> flows)
    : frames_(frames), flows_(flows) {}

const Image& SimilarityContext::frame(int t) const {
  if (t < 0 || static_cast<std::size_t>(t) >= frames_.size()) {
    throw InputError("missing image for frame " + std::to_string(t));
  }
  return frames_[t];
}

ColorHistogram SimilarityContext::histogram(const Detection& d) const {
  const BoxKey key{d.frame, d.box.x_min(), d.box.y_min(), d.box.x_max(),
                   d.box.y_max()};
  {
    std::lock_guard lock(mutex_);
    if (auto it = histograms_.find(key); it != histograms_.end()) return it->second;
  }
  ColorHistogram h = color_histogram(frame(d.frame), d.box);
  std::lock_guard lock(mutex_);
  return histograms_.emplace(key, h).first->second;
}

Point2d SimilarityContext::propagated_center(const Detection& a, int target_frame,
                                             const SimilarityConfig& cfg) const {
  const CenterKey key{a.frame,        a.box.x_min(),     a.box.y_min(),
                      a.box.x_max(),  a.box.y_max(),     target_frame,
                      cfg.search_radius};
  {
    std::lock_guard lock(mutex_);
    if (auto it = centers_.find(key); it != centers_.end()) return it->second;
  }
  const Point2d c = propagate_center(a, frame(a.frame), frame(target_frame), cfg);
  std::lock_guard lock(mutex_);
  return centers_.emplace(key, c).first->second;
}

SimilarityScore composite_similarity(const Detection& a, const Detection& b,
                                     const SimilarityContext& ctx,
                                     const SimilarityConfig& cfg) {
  SimilarityScore out;
  TermBreakdown& t = out.terms;
  ExtReal& v = out.value;
  v = 1.0;
  if (cfg.use_score) v *= (t.score = b.score);
  if (cfg.use_category && (v *= (t.category = s_category(a, b))).is_neg_inf())
    return out;
  if (cfg.use_vol) v *= (t.vol = s_vol(a.box, b.box));
  if (cfg.use_side) v *= (t.side = s_side(a.box, b.box));
  if (cfg.use_app &&
      (v *= (t.app = s_app(ctx.histogram(a), ctx.histogram(b), cfg))).is_neg_inf())
    return out;
  if (cfg.use_match) v *= (t.match = s_match(a, b, ctx.flows()));
  if (cfg.use_center) {
    const Point2d cp = ctx.propagated_center(a, b.frame, cfg);
    v *= (t.center = s_center(cp, box_center(b.box), cfg));
  }
  return out;
}

}  // namespace vidseg
