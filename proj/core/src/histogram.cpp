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
#include "vidseg/histogram.hpp"

#include "vidseg/detection.hpp"
#include "vidseg/errors.hpp"

namespace vidseg {

void validate(const Detection& d) {
  if (d.frame < 0) {
    throw InputError("detection frame must be non-negative, got " +
                     std::to_string(d.frame));
  }
  if (!(d.score >= 0.0 && d.score <= 1.0)) {
    throw InputError("detection score outside [0,1]: " +
                     std::to_string(d.score));
  }
}

int histogram_bin(Rgb c) {
  constexpr int n = kHistogramBinsPerChannel;
  return ((c.r / 32) * n + c.g / 32) * n + c.b / 32;
}

ColorHistogram color_histogram(const Image& img, const BoundingBox& box) {
  if (!box.inside_frame(img.width(), img.height())) {
    throw BoundsError("box " + box.to_string() + " outside " +
                      std::to_string(img.width()) + "x" +
                      std::to_string(img.height()) + " image");
  }
  ColorHistogram h;
  for (int y = box.y_min(); y < box.y_max(); ++y)
    for (int x = box.x_min(); x < box.x_max(); ++x) ++h.bins[histogram_bin(img.at(x, y))];
  h.total = static_cast<std::uint64_t>(box.area());
  return h;
}

}  // namespace vidseg
