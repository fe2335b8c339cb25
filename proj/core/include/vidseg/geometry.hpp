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

#ifndef VIDSEG_GEOMETRY_HPP
#define VIDSEG_GEOMETRY_HPP

#include <cstdint>
#include <string>

namespace vidseg {

struct Point2d {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2d&, const Point2d&) = default;
};

double distance(Point2d a, Point2d b);

/// Integer, half-open pixel box: covers x_min <= x < x_max, y_min <= y < y_max.
///
/// The checked constructor rejects empty or inverted boxes with InputError, so
/// every constructed box has positive area. The default box is the unit box at
/// the origin.
class BoundingBox {
 public:
  BoundingBox() = default;
  BoundingBox(int x_min, int y_min, int x_max, int y_max);

  int x_min() const { return x_min_; }
  int y_min() const { return y_min_; }
  int x_max() const { return x_max_; }
  int y_max() const { return y_max_; }

  int width() const { return x_max_ - x_min_; }
  int height() const { return y_max_ - y_min_; }
  std::int64_t area() const {
    return static_cast<std::int64_t>(width()) * height();
  }

  bool contains(int x, int y) const {
    return x >= x_min_ && x < x_max_ && y >= y_min_ && y < y_max_;
  }
  bool inside_frame(int frame_width, int frame_height) const {
    return x_min_ >= 0 && y_min_ >= 0 && x_max_ <= frame_width &&
           y_max_ <= frame_height;
  }

  BoundingBox translated(int dx, int dy) const;

  std::string to_string() const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;

 private:
  int x_min_ = 0;
  int y_min_ = 0;
  int x_max_ = 1;
  int y_max_ = 1;
};

/// Area of the overlap of two boxes; 0 when they are disjoint.
std::int64_t intersection_area(const BoundingBox& a, const BoundingBox& b);

/// Smallest box containing both arguments.
BoundingBox bounding_union(const BoundingBox& a, const BoundingBox& b);

/// Intersection over union, in [0, 1]. Symmetric; 1 iff the boxes coincide.
double iou(const BoundingBox& a, const BoundingBox& b);

Point2d box_center(const BoundingBox& b);

/// Box of the given size whose center is nearest to c (coordinates rounded
/// half away from zero).
BoundingBox box_around(Point2d c, int width, int height);

}  // namespace vidseg

#endif  // VIDSEG_GEOMETRY_HPP
