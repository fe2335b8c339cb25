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
#ifndef VIDSEG_HISTOGRAM_HPP
#define VIDSEG_HISTOGRAM_HPP

#include <array>
#include <cstdint>

#include "vidseg/geometry.hpp"
#include "vidseg/image.hpp"

namespace vidseg {

inline constexpr int kHistogramBinsPerChannel = 8;
inline constexpr int kHistogramBins =
    kHistogramBinsPerChannel * kHistogramBinsPerChannel *
    kHistogramBinsPerChannel;

/// Joint 8x8x8 RGB histogram of pixel counts.
struct ColorHistogram {
  std::array<std::uint32_t, kHistogramBins> bins{};
  std::uint64_t total = 0;

  friend bool operator==(const ColorHistogram&, const ColorHistogram&) = default;
};

/// Bin of a color: floor(channel / 32) per channel, red most significant.
int histogram_bin(Rgb c);

/// Histogram of the pixels under box. Throws BoundsError if the box leaves the
/// image.
ColorHistogram color_histogram(const Image& img, const BoundingBox& box);

}  // namespace vidseg

#endif  // VIDSEG_HISTOGRAM_HPP
