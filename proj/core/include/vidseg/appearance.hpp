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
#ifndef VIDSEG_APPEARANCE_HPP
#define VIDSEG_APPEARANCE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "vidseg/gmm.hpp"
#include "vidseg/image.hpp"
#include "vidseg/tube.hpp"

namespace vidseg {

struct AppearanceConfig {
  int components = 5;
  std::size_t max_samples = 20000;
  std::uint64_t seed = 0;
};

struct AppearanceModels {
  std::vector<Gmm> objects;  // one per object, same order as the evidence
  Gmm background;
};

/// Fits one color model per object on the pixels where its evidence is
/// positive, and a background model on the pixels outside every tube box.
///
/// object_evidence[i][t] is object i's evidence mask in frame t (an empty
/// sequence or empty masks mean no evidence in that frame). Objects without
/// any evidence get the uniform model. Both pools are subsampled to
/// cfg.max_samples with a fixed seed.
AppearanceModels build_appearance_models(
    std::span<const std::vector<PixelMask>> object_evidence,
    std::span<const Tube> tubes, std::span<const Image> frames,
    const AppearanceConfig& cfg = {});

}  // namespace vidseg

#endif  // VIDSEG_APPEARANCE_HPP
