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
#include "vidseg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vidseg/errors.hpp"

namespace vidseg {

double distance(Point2d a, Point2d b) { return std::hypot(a.x - b.x, a.y - b.y); }

BoundingBox::BoundingBox(int x_min, int y_min, int x_max, int y_max)
    : x_min_(x_min), y_min_(y_min), x_max_(x_max), y_max_(y_max) {
  if (x_min >= x_max || y_min >= y_max) {
    throw InputError("invalid bounding box (" + std::to_string(x_min) + "," +
                     std::to_string(y_min) + "," + std::to_string(x_max) + "," +
                     std::to_string(y_max) + ")");
  }
}

BoundingBox BoundingBox::translated(int dx, int dy) const {
  return {x_min_ + dx, y_min_ + dy, x_max_ + dx, y_max_ + dy};
}

std::string BoundingBox::to_string() const {
  std::ostringstream os;
  os << "(" << x_min_ << "," << y_min_ << "," << x_max_ << "," << y_max_ << ")";
  return os.str();
}

std::int64_t intersection_area(const BoundingBox& a, const BoundingBox& b) {
  const std::int64_t w =
      std::min(a.x_max(), b.x_max()) - std::max(a.x_min(), b.x_min());
  const std::int64_t h =
      std::min(a.y_max(), b.y_max()) - std::max(a.y_min(), b.y_min());
  return (w > 0 && h > 0) ? w * h : 0;
}

BoundingBox bounding_union(const BoundingBox& a, const BoundingBox& b) {
  return {std::min(a.x_min(), b.x_min()), std::min(a.y_min(), b.y_min()),
          std::max(a.x_max(), b.x_max()), std::max(a.y_max(), b.y_max())};
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  const std::int64_t inter = intersection_area(a, b);
  const std::int64_t uni = a.area() + b.area() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

Point2d box_center(const BoundingBox& b) {
  return {(b.x_min() + b.x_max()) / 2.0, (b.y_min() + b.y_max()) / 2.0};
}

BoundingBox box_around(Point2d c, int width, int height) {
  const int x0 = static_cast<int>(std::lround(c.x - width / 2.0));
  const int y0 = static_cast<int>(std::lround(c.y - height / 2.0));
  return {x0, y0, x0 + width, y0 + height};
}

}  // namespace vidseg
