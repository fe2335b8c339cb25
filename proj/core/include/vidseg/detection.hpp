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
#ifndef VIDSEG_DETECTION_HPP
#define VIDSEG_DETECTION_HPP

#include <string>

#include "vidseg/geometry.hpp"

namespace vidseg {

/// One scored, categorized detector box in one frame.
struct Detection {
  int frame = 0;
  BoundingBox box;
  double score = 0.0;
  std::string category;

  friend bool operator==(const Detection&, const Detection&) = default;
};

/// Throws InputError when frame < 0 or score is outside [0, 1].
void validate(const Detection& d);

}  // namespace vidseg

#endif  // VIDSEG_DETECTION_HPP
