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
#ifndef VIDSEG_TESTS_TEST_UTIL_HPP
#define VIDSEG_TESTS_TEST_UTIL_HPP

#include <cstdint>
#include <random>

#include "vidseg/geometry.hpp"
#include "vidseg/image.hpp"

namespace vidseg::testing {

inline Image noise_image(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> c(0, 255);
  Image img(w, h);
  for (auto& p : img.pixels())
    p = {static_cast<std::uint8_t>(c(rng)), static_cast<std::uint8_t>(c(rng)),
         static_cast<std::uint8_t>(c(rng))};
  return img;
}

// Copy of img moved by (dx, dy); uncovered pixels take fill.
inline Image shifted(const Image& img, int dx, int dy, Rgb fill = {}) {
  Image out(img.width(), img.height(), fill);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const int sx = x - dx, sy = y - dy;
      if (sx >= 0 && sy >= 0 && sx < img.width() && sy < img.height())
        out.at(x, y) = img.at(sx, sy);
    }
  return out;
}

inline BoundingBox random_box(std::mt19937_64& rng, int w, int h, int max_side) {
  std::uniform_int_distribution<int> side(1, max_side);
  const int bw = std::min(side(rng), w), bh = std::min(side(rng), h);
  const int x = std::uniform_int_distribution<int>(0, w - bw)(rng);
  const int y = std::uniform_int_distribution<int>(0, h - bh)(rng);
  return BoundingBox(x, y, x + bw, y + bh);
}

}  // namespace vidseg::testing

#endif  // VIDSEG_TESTS_TEST_UTIL_HPP
