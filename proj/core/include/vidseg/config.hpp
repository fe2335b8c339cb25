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
#ifndef VIDSEG_CONFIG_HPP
#define VIDSEG_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "vidseg/appearance.hpp"
#include "vidseg/grabcut.hpp"
#include "vidseg/motion_prior.hpp"
#include "vidseg/potts.hpp"
#include "vidseg/similarity.hpp"
#include "vidseg/superpixel_graph.hpp"
#include "vidseg/tube_linker.hpp"

namespace vidseg {

struct PipelineConfig {
  SimilarityConfig similarity;
  LinkerConfig linker;
  MotionPriorConfig motion;
  GrabcutConfig grabcut;
  AppearanceConfig appearance;
  EdgeWeightConfig edges;
  double prior_floor = 1e-4;
  double nms_threshold = 0.5;
  double merge_threshold = 0.5;
  SolverKind solver = SolverKind::kExpansion;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency

  /// Validates every nested config. Throws InputError.
  void validate() const;
};

std::string_view solver_name(SolverKind kind);
/// "expansion", "icm" or "brute". Throws InputError otherwise.
SolverKind parse_solver(std::string_view name);

/// JSON object with one section per module. Every key is optional; unknown
/// keys and wrongly typed values are rejected with FormatError.
PipelineConfig parse_config(std::string_view json);
PipelineConfig read_config_file(const std::filesystem::path& path);
std::string config_to_json(const PipelineConfig& cfg);

}  // namespace vidseg

#endif  // VIDSEG_CONFIG_HPP
