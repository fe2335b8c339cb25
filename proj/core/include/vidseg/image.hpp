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
#ifndef VIDSEG_IMAGE_HPP
#define VIDSEG_IMAGE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vidseg/geometry.hpp"

namespace vidseg {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Luma used wherever a grayscale value is needed (correlation, contrast).
inline double luma(Rgb c) { return 0.299 * c.r + 0.587 * c.g + 0.114 * c.b; }

/// Row-major 8-bit RGB frame.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb fill = {});
  Image(int width, int height, std::vector<Rgb> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  Rgb& at(int x, int y) { return pixels_[index(x, y)]; }
  const Rgb& at(int x, int y) const { return pixels_[index(x, y)]; }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  std::span<const Rgb> pixels() const { return pixels_; }
  std::span<Rgb> pixels() { return pixels_; }

  void fill_box(const BoundingBox& box, Rgb color);

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Rgb> pixels_;
};

/// Grayscale copy of an image (row-major doubles).
std::vector<double> to_gray(const Image& img);

/// Per-pixel displacement from frame t to frame t+1.
struct FlowField {
  int width = 0;
  int height = 0;
  std::vector<float> u;
  std::vector<float> v;

  FlowField() = default;
  FlowField(int w, int h, float fill_u = 0.0f, float fill_v = 0.0f);

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
  bool valid() const {
    const auto n = static_cast<std::size_t>(width) * height;
    return width > 0 && height > 0 && u.size() == n && v.size() == n;
  }

  friend bool operator==(const FlowField&, const FlowField&) = default;
};

/// Target pixel of (x, y) under flow, rounded half away from zero. Returns
/// false when the target leaves the frame.
bool flow_target(const FlowField& flow, int x, int y, int& tx, int& ty);

/// Per-pixel probability map in [0, 1].
class PixelMask {
 public:
  PixelMask() = default;
  PixelMask(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }

  double& at(int x, int y) { return values_[index(x, y)]; }
  double at(int x, int y) const { return values_[index(x, y)]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  /// Number of pixels with value > threshold.
  std::size_t count_above(double threshold = 0.0) const;
  double max_value() const;

  friend bool operator==(const PixelMask&, const PixelMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

/// Pixelwise maximum. Dimensions must agree.
PixelMask max_of(const PixelMask& a, const PixelMask& b);

/// Integer label per pixel (superpixel ids, segmentation labels).
class LabelImage {
 public:
  LabelImage() = default;
  LabelImage(int width, int height, std::int32_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return labels_.size(); }

  std::int32_t& at(int x, int y) { return labels_[index(x, y)]; }
  std::int32_t at(int x, int y) const { return labels_[index(x, y)]; }
  std::int32_t& operator[](std::size_t i) { return labels_[i]; }
  std::int32_t operator[](std::size_t i) const { return labels_[i]; }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  std::span<const std::int32_t> labels() const { return labels_; }
  std::span<std::int32_t> labels() { return labels_; }

  std::int32_t max_label() const;

  friend bool operator==(const LabelImage&, const LabelImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::int32_t> labels_;
};

}  // namespace vidseg

#endif  // VIDSEG_IMAGE_HPP
