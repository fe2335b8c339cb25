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
#include "vidseg/image.hpp"

#include <algorithm>
#include <cmath>

#include "vidseg/errors.hpp"

namespace vidseg {

namespace {

void check_dims(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw InputError("image dimensions must be positive, got " +
                     std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

Image::Image(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

Image::Image(int width, int height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.size() != static_cast<std::size_t>(width) * height) {
    throw InputError("pixel count does not match image dimensions");
  }
}

void Image::fill_box(const BoundingBox& box, Rgb color) {
  const int x0 = std::max(box.x_min(), 0), x1 = std::min(box.x_max(), width_);
  const int y0 = std::max(box.y_min(), 0), y1 = std::min(box.y_max(), height_);
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) at(x, y) = color;
}

std::vector<double> to_gray(const Image& img) {
  std::vector<double> gray(img.size());
  const auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) gray[i] = luma(px[i]);
  return gray;
}

FlowField::FlowField(int w, int h, float fill_u, float fill_v)
    : width(w), height(h) {
  check_dims(w, h);
  const auto n = static_cast<std::size_t>(w) * h;
  u.assign(n, fill_u);
  v.assign(n, fill_v);
}

bool flow_target(const FlowField& flow, int x, int y, int& tx, int& ty) {
  const std::size_t i = flow.index(x, y);
  tx = static_cast<int>(std::lround(x + static_cast<double>(flow.u[i])));
  ty = static_cast<int>(std::lround(y + static_cast<double>(flow.v[i])));
  return tx >= 0 && ty >= 0 && tx < flow.width && ty < flow.height;
}

PixelMask::PixelMask(int width, int height, double fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  values_.assign(static_cast<std::size_t>(width) * height, fill);
}

std::size_t PixelMask::count_above(double threshold) const {
  return static_cast<std::size_t>(std::count_if(
      values_.begin(), values_.end(), [&](double v) { return v > threshold; }));
}

double PixelMask::max_value() const {
  return values_.empty() ? 0.0
                         : *std::max_element(values_.begin(), values_.end());
}

PixelMask max_of(const PixelMask& a, const PixelMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw InputError("mask dimensions differ");
  }
  PixelMask out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

LabelImage::LabelImage(int width, int height, std::int32_t fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  labels_.assign(static_cast<std::size_t>(width) * height, fill);
}

std::int32_t LabelImage::max_label() const {
  return labels_.empty() ? 0 : *std::max_element(labels_.begin(), labels_.end());
}

}  // namespace vidseg
