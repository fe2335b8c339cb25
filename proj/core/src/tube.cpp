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
#include "vidseg/tube.hpp"

#include <algorithm>

namespace vidseg {

bool Tube::is_dense() const {
  return std::none_of(provenance.begin(), provenance.end(),
                      [](Provenance p) { return p == Provenance::kMissing; });
}

std::optional<BoundingBox> Tube::box_at(int frame) const {
  if (!covers(frame)) return std::nullopt;
  const auto i = static_cast<std::size_t>(frame - first_frame);
  if (provenance[i] == Provenance::kMissing) return std::nullopt;
  return boxes[i];
}

double volumetric_iou(const Tube& a, const Tube& b) {
  if (a.boxes.empty() || b.boxes.empty()) return 0.0;
  const int lo = std::min(a.first_frame, b.first_frame);
  const int hi = std::max(a.last_frame(), b.last_frame());
  double inter = 0.0, uni = 0.0;
  for (int t = lo; t <= hi; ++t) {
    const auto ba = a.box_at(t);
    const auto bb = b.box_at(t);
    if (ba && bb) {
      const auto i = intersection_area(*ba, *bb);
      inter += static_cast<double>(i);
      uni += static_cast<double>(ba->area() + bb->area() - i);
    } else if (ba) {
      uni += static_cast<double>(ba->area());
    } else if (bb) {
      uni += static_cast<double>(bb->area());
    }
  }
  return uni > 0.0 ? inter / uni : 0.0;
}

}  // namespace vidseg
