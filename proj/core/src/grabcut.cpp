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
#include "vidseg/grabcut.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "vidseg/errors.hpp"
#include "vidseg/maxflow.hpp"

namespace vidseg {

namespace {

// Upper bound on pixels used to fit each model per iteration.
constexpr std::size_t kMaxFitSamples = 4096;
constexpr int kEmIterationsPerRound = 10;

std::vector<Eigen::Vector3d> subsample(std::vector<Eigen::Vector3d> samples,
                                       std::uint64_t seed) {
  if (samples.size() <= kMaxFitSamples) return samples;
  std::mt19937_64 rng(seed);
  std::shuffle(samples.begin(), samples.end(), rng);
  samples.resize(kMaxFitSamples);
  return samples;
}

}  // namespace

void GrabcutConfig::validate() const {
  if (iterations < 1) throw InputError("grabcut iterations must be >= 1");
  if (gmm_components < 1) throw InputError("gmm_components must be >= 1");
  if (!(pairwise_gamma > 0.0)) throw InputError("pairwise_gamma must be > 0");
  if (!(shrink_margin >= 0.0 && shrink_margin < 0.5))
    throw InputError("shrink_margin must lie in [0,0.5)");
}

BoundingBox grabcut_init_box(const BoundingBox& box, const GrabcutConfig& cfg) {
  const int mx = std::min(static_cast<int>(std::lround(cfg.shrink_margin * box.width())),
                          (box.width() - 1) / 2);
  const int my = std::min(static_cast<int>(std::lround(cfg.shrink_margin * box.height())),
                          (box.height() - 1) / 2);
  return {box.x_min() + mx, box.y_min() + my, box.x_max() - mx, box.y_max() - my};
}

BoundingBox grabcut_band(const BoundingBox& box, int image_width, int image_height) {
  // (w + 2m)(h + 2m) = 2wh
  const double w = box.width(), h = box.height();
  const int m = static_cast<int>(std::ceil((-(w + h) + std::sqrt((w + h) * (w + h) + 4 * w * h)) / 4.0));
  return {std::max(box.x_min() - m, 0), std::max(box.y_min() - m, 0),
          std::min(box.x_max() + m, image_width), std::min(box.y_max() + m, image_height)};
}

PixelMask grabcut_box(const Image& img, const BoundingBox& box,
                      const GrabcutConfig& cfg, GrabcutTrace* trace) {
  cfg.validate();
  if (!box.inside_frame(img.width(), img.height())) {
    throw BoundsError("grabcut box " + box.to_string() + " outside image");
  }
  const BoundingBox init = grabcut_init_box(box, cfg);
  const BoundingBox band = grabcut_band(box, img.width(), img.height());
  const int bw = box.width(), bh = box.height();
  const int n = bw * bh;
  auto local = [&](int x, int y) { return (y - box.y_min()) * bw + (x - box.x_min()); };

  std::vector<Eigen::Vector3d> color(n);
  std::vector<int> label(n, 0);  // 1 = foreground
  for (int y = box.y_min(); y < box.y_max(); ++y)
    for (int x = box.x_min(); x < box.x_max(); ++x) {
      color[local(x, y)] = to_vec(img.at(x, y));
      label[local(x, y)] = init.contains(x, y) ? 1 : 0;
    }
  std::vector<Eigen::Vector3d> band_colors;
  for (int y = band.y_min(); y < band.y_max(); ++y)
    for (int x = band.x_min(); x < band.x_max(); ++x)
      if (!box.contains(x, y)) band_colors.push_back(to_vec(img.at(x, y)));

  // Contrast-sensitive 4-neighbour weights.
  struct Link {
    int p, q;
    double w;
  };
  std::vector<Link> links;
  double mean_sq = 0.0;
  for (int y = 0; y < bh; ++y)
    for (int x = 0; x < bw; ++x) {
      const int p = y * bw + x;
      if (x + 1 < bw) links.push_back({p, p + 1, (color[p] - color[p + 1]).squaredNorm()});
      if (y + 1 < bh) links.push_back({p, p + bw, (color[p] - color[p + bw]).squaredNorm()});
    }
  for (const Link& l : links) mean_sq += l.w;
  if (!links.empty()) mean_sq /= static_cast<double>(links.size());
  const double beta = mean_sq > 0.0 ? 1.0 / (2.0 * mean_sq) : 0.0;
  for (Link& l : links) l.w = cfg.pairwise_gamma * std::exp(-beta * l.w);

  auto to_mask = [&](const std::vector<int>& lab) {
    PixelMask out(img.width(), img.height(), 0.0);
    for (int y = box.y_min(); y < box.y_max(); ++y)
      for (int x = box.x_min(); x < box.x_max(); ++x)
        out.at(x, y) = lab[local(x, y)] ? 1.0 : 0.0;
    return out;
  };

  std::vector<double> cost_fg(n), cost_bg(n);
  auto energy = [&](const std::vector<int>& lab) {
    double e = 0.0;
    for (int p = 0; p < n; ++p) e += lab[p] ? cost_fg[p] : cost_bg[p];
    for (const Link& l : links)
      if (lab[l.p] != lab[l.q]) e += l.w;
    return e;
  };
  auto score_models = [&](const Gmm& fg, const Gmm& bg, std::vector<double>& cf,
                          std::vector<double>& cb) {
    for (int p = 0; p < n; ++p) {
      cf[p] = -fg.log_density(color[p]);
      cb[p] = -bg.log_density(color[p]);
    }
  };

  GmmFitOptions fit_opts;
  fit_opts.max_iterations = kEmIterationsPerRound;
  Gmm fg_model, bg_model;
  bool have_models = false;
  for (int it = 0; it < cfg.iterations; ++it) {
    std::vector<Eigen::Vector3d> fg_samples, bg_samples = band_colors;
    for (int p = 0; p < n; ++p) (label[p] ? fg_samples : bg_samples).push_back(color[p]);
    if (fg_samples.empty() || bg_samples.empty()) {
      if (trace) trace->fallback = true;
      break;
    }
    fit_opts.seed = cfg.seed + static_cast<std::uint64_t>(it);
    Gmm fg = fit_gmm(subsample(std::move(fg_samples), fit_opts.seed), cfg.gmm_components, fit_opts);
    Gmm bg = fit_gmm(subsample(std::move(bg_samples), fit_opts.seed + 7919), cfg.gmm_components, fit_opts);
    std::vector<double> cf(n), cb(n);
    score_models(fg, bg, cf, cb);
    // Refitted models replace the old ones only if they do not raise the
    // energy of the current labeling.
    if (have_models) {
      const double old_e = energy(label);
      std::swap(cf, cost_fg);
      std::swap(cb, cost_bg);
      const double new_e = energy(label);
      if (new_e > old_e) {
        std::swap(cf, cost_fg);
        std::swap(cb, cost_bg);
      } else {
        fg_model = std::move(fg);
        bg_model = std::move(bg);
      }
    } else {
      cost_fg = std::move(cf);
      cost_bg = std::move(cb);
      fg_model = std::move(fg);
      bg_model = std::move(bg);
      have_models = true;
    }

    double spread = 0.0;
    for (int p = 0; p < n; ++p) spread = std::max(spread, std::abs(cost_fg[p] - cost_bg[p]));
    if (spread < 1e-9) {
      if (trace) {
        trace->fallback = true;
        trace->energy.push_back(energy(label));
      }
      continue;
    }

    BinaryCut cut(n);
    for (int p = 0; p < n; ++p) cut.add_unary(p, cost_bg[p], cost_fg[p]);
    for (const Link& l : links) cut.add_pairwise(l.p, l.q, 0.0, l.w, l.w, 0.0);
    cut.minimize();
    std::vector<int> next = cut.labels();
    // Keep the current labeling when the cut does not improve on it.
    if (energy(next) <= energy(label)) label = std::move(next);
    if (trace) trace->energy.push_back(energy(label));
  }
  return to_mask(label);
}

}  // namespace vidseg
