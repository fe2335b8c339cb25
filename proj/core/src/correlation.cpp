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
#include "vidseg/correlation.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "vidseg/errors.hpp"

namespace vidseg {

namespace {

__extension__ using i128 = __int128;

// Luma scaled by 1000 so that all correlation sums stay exact integers.
std::int64_t int_luma(Rgb c) { return 299 * c.r + 587 * c.g + 114 * c.b; }

struct Integral {
  int width = 0;
  std::vector<std::int64_t> sum;
  std::vector<std::int64_t> sum_sq;

  explicit Integral(const std::vector<std::int64_t>& g, int w, int h)
      : width(w),
        sum(static_cast<std::size_t>(w + 1) * (h + 1), 0),
        sum_sq(static_cast<std::size_t>(w + 1) * (h + 1), 0) {
    for (int y = 0; y < h; ++y) {
      std::int64_t row = 0, row_sq = 0;
      for (int x = 0; x < w; ++x) {
        const std::int64_t v = g[static_cast<std::size_t>(y) * w + x];
        row += v;
        row_sq += v * v;
        sum[at(x + 1, y + 1)] = sum[at(x + 1, y)] + row;
        sum_sq[at(x + 1, y + 1)] = sum_sq[at(x + 1, y)] + row_sq;
      }
    }
  }
  std::size_t at(int x, int y) const {
    return static_cast<std::size_t>(y) * (width + 1) + x;
  }
  std::int64_t box(const std::vector<std::int64_t>& t, int x0, int y0, int x1,
                   int y1) const {
    return t[at(x1, y1)] - t[at(x0, y1)] - t[at(x1, y0)] + t[at(x0, y0)];
  }
};

}  // namespace

Displacement correlate_box(const Image& from, const BoundingBox& box,
                           const Image& to, int radius) {
  if (!box.inside_frame(from.width(), from.height())) {
    throw BoundsError("correlation box " + box.to_string() +
                      " outside source image");
  }
  if (from.width() != to.width() || from.height() != to.height()) {
    throw InputError("correlation images differ in size");
  }
  const int w = box.width(), h = box.height();
  const auto n = static_cast<i128>(w) * h;

  std::vector<std::int64_t> patch(static_cast<std::size_t>(w) * h);
  std::int64_t patch_sum = 0;
  i128 patch_sq = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const std::int64_t v = int_luma(from.at(box.x_min() + x, box.y_min() + y));
      patch[static_cast<std::size_t>(y) * w + x] = v;
      patch_sum += v;
      patch_sq += static_cast<i128>(v) * v;
    }
  const i128 patch_var = n * patch_sq -
                             static_cast<i128>(patch_sum) * patch_sum;

  std::vector<std::int64_t> target(to.size());
  for (std::size_t i = 0; i < target.size(); ++i) target[i] = int_luma(to.pixels()[i]);
  const Integral integral(target, to.width(), to.height());

  bool found = false;
  Displacement best;
  long best_len = 0;
  for (int dy = -radius; dy <= radius; ++dy) {
    const int y0 = box.y_min() + dy;
    if (y0 < 0 || y0 + h > to.height()) continue;
    for (int dx = -radius; dx <= radius; ++dx) {
      const int x0 = box.x_min() + dx;
      if (x0 < 0 || x0 + w > to.width()) continue;

      double ncc = 0.0;
      const std::int64_t win_sum = integral.box(integral.sum, x0, y0, x0 + w, y0 + h);
      const i128 win_var =
          n * integral.box(integral.sum_sq, x0, y0, x0 + w, y0 + h) -
          static_cast<i128>(win_sum) * win_sum;
      if (patch_var > 0 && win_var > 0) {
        i128 cross = 0;
        for (int y = 0; y < h; ++y) {
          const std::int64_t* p = &patch[static_cast<std::size_t>(y) * w];
          const std::int64_t* t = &target[to.index(x0, y0 + y)];
          std::int64_t row = 0;
          for (int x = 0; x < w; ++x) row += p[x] * t[x];
          cross += row;
        }
        const i128 num = n * cross - static_cast<i128>(patch_sum) * win_sum;
        ncc = static_cast<double>(num) /
              std::sqrt(static_cast<double>(patch_var) * static_cast<double>(win_var));
      }

      const long len = static_cast<long>(dx) * dx + static_cast<long>(dy) * dy;
      // Scan order is row-major, so equal (score, length) keeps the earlier one.
      if (!found || ncc > best.score || (ncc == best.score && len < best_len)) {
        best = {dx, dy, ncc};
        best_len = len;
        found = true;
      }
    }
  }
  if (!found) throw InputError("correlation search window lies outside the image");
  return best;
}

}  // namespace vidseg
