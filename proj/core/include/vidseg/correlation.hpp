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
#ifndef VIDSEG_CORRELATION_HPP
#define VIDSEG_CORRELATION_HPP

#include "vidseg/geometry.hpp"
#include "vidseg/image.hpp"

namespace vidseg {

struct Displacement {
  int dx = 0;
  int dy = 0;
  double score = 0.0;  // normalized cross-correlation at the chosen offset

  friend bool operator==(const Displacement&, const Displacement&) = default;
};

/// Finds where the grayscale patch under box in `from` best matches `to`.
///
/// Every integer offset within +-radius whose shifted box stays inside `to`
/// is scored by normalized cross-correlation (0 when either window has zero
/// variance). The maximum wins; ties go to the smallest offset length, then to
/// row-major order (dy, then dx). Throws BoundsError if box leaves `from`,
/// InputError if the images differ in size or no offset is admissible.
Displacement correlate_box(const Image& from, const BoundingBox& box,
                           const Image& to, int radius);

}  // namespace vidseg

#endif  // VIDSEG_CORRELATION_HPP
