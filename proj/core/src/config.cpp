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
#include "vidseg/config.hpp"

#include <set>

#include "json.hpp"
#include "vidseg/errors.hpp"
#include "vidseg/io.hpp"

namespace vidseg {

namespace {

using nlohmann::json;

// Reads the keys of one JSON object, rejecting keys that were never asked for.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw FormatError("config: '" + path_ + "' must be an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw FormatError("config: '" + path_ + key + "' has the wrong type");
    }
  }

  Section sub(const char* key) {
    seen_.insert(key);
    static const json empty = json::object();
    return Section(j_.contains(key) ? j_.at(key) : empty, path_ + key + ".");
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw FormatError("config: unknown key '" + path_ + key + "'");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

}  // namespace

void PipelineConfig::validate() const {
  similarity.validate();
  linker.validate();
  motion.validate();
  grabcut.validate();
  edges.validate();
  if (appearance.components < 1) throw InputError("appearance.components must be >= 1");
  if (appearance.max_samples < 1) throw InputError("appearance.max_samples must be >= 1");
  if (!(prior_floor > 0.0 && prior_floor < 1.0)) throw InputError("prior_floor must lie in (0, 1)");
  if (!(nms_threshold >= 0.0 && nms_threshold <= 1.0))
    throw InputError("nms_threshold must lie in [0, 1]");
  if (!(merge_threshold >= 0.0 && merge_threshold <= 1.0))
    throw InputError("merge_threshold must lie in [0, 1]");
  if (threads < 0) throw InputError("threads must be >= 0");
}

std::string_view solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::kExpansion: return "expansion";
    case SolverKind::kIcm: return "icm";
    case SolverKind::kBruteForce: return "brute";
  }
  return "expansion";
}

SolverKind parse_solver(std::string_view name) {
  if (name == "expansion") return SolverKind::kExpansion;
  if (name == "icm") return SolverKind::kIcm;
  if (name == "brute") return SolverKind::kBruteForce;
  throw InputError("unknown solver '" + std::string(name) + "' (expansion, icm, brute)");
}

PipelineConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  PipelineConfig cfg;
  Section top(root, "");

  Section sim = top.sub("similarity");
  auto& s = cfg.similarity;
  sim.get("use_score", s.use_score);
  sim.get("use_category", s.use_category);
  sim.get("use_app", s.use_app);
  sim.get("use_vol", s.use_vol);
  sim.get("use_side", s.use_side);
  sim.get("use_match", s.use_match);
  sim.get("use_center", s.use_center);
  sim.get("app_threshold", s.app_threshold);
  sim.get("center_decay", s.center_decay);
  sim.get("search_radius", s.search_radius);
  sim.finish();

  Section link = top.sub("linker");
  link.get("lookahead", cfg.linker.lookahead);
  link.get("tube_threshold", cfg.linker.tube_threshold);
  link.get("max_tubes", cfg.linker.max_tubes);
  link.finish();

  Section motion = top.sub("motion");
  motion.get("boundary_threshold", cfg.motion.boundary_threshold);
  motion.get("ray_directions", cfg.motion.ray_directions);
  motion.get("smoothing_decay", cfg.motion.smoothing_decay);
  motion.get("smoothing_window", cfg.motion.smoothing_window);
  motion.finish();

  Section gc = top.sub("grabcut");
  gc.get("iterations", cfg.grabcut.iterations);
  gc.get("gmm_components", cfg.grabcut.gmm_components);
  gc.get("pairwise_gamma", cfg.grabcut.pairwise_gamma);
  gc.get("shrink_margin", cfg.grabcut.shrink_margin);
  gc.finish();

  Section app = top.sub("appearance");
  app.get("components", cfg.appearance.components);
  app.get("max_samples", cfg.appearance.max_samples);
  app.finish();

  Section edges = top.sub("edges");
  edges.get("sigma_color", cfg.edges.sigma_color);
  edges.get("spatial_weight", cfg.edges.spatial_weight);
  edges.get("temporal_weight", cfg.edges.temporal_weight);
  edges.finish();

  top.get("prior_floor", cfg.prior_floor);
  top.get("nms_threshold", cfg.nms_threshold);
  top.get("merge_threshold", cfg.merge_threshold);
  std::string solver(solver_name(cfg.solver));
  top.get("solver", solver);
  top.get("seed", cfg.seed);
  top.get("threads", cfg.threads);
  top.finish();

  try {
    cfg.solver = parse_solver(solver);
    cfg.validate();
  } catch (const InputError& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  return cfg;
}

PipelineConfig read_config_file(const std::filesystem::path& path) {
  try {
    return parse_config(read_text_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string config_to_json(const PipelineConfig& cfg) {
  nlohmann::ordered_json j;
  const auto& s = cfg.similarity;
  j["similarity"] = {{"use_score", s.use_score},         {"use_category", s.use_category},
                     {"use_app", s.use_app},             {"use_vol", s.use_vol},
                     {"use_side", s.use_side},           {"use_match", s.use_match},
                     {"use_center", s.use_center},       {"app_threshold", s.app_threshold},
                     {"center_decay", s.center_decay},   {"search_radius", s.search_radius}};
  j["linker"] = {{"lookahead", cfg.linker.lookahead},
                 {"tube_threshold", cfg.linker.tube_threshold},
                 {"max_tubes", cfg.linker.max_tubes}};
  j["motion"] = {{"boundary_threshold", cfg.motion.boundary_threshold},
                 {"ray_directions", cfg.motion.ray_directions},
                 {"smoothing_decay", cfg.motion.smoothing_decay},
                 {"smoothing_window", cfg.motion.smoothing_window}};
  j["grabcut"] = {{"iterations", cfg.grabcut.iterations},
                  {"gmm_components", cfg.grabcut.gmm_components},
                  {"pairwise_gamma", cfg.grabcut.pairwise_gamma},
                  {"shrink_margin", cfg.grabcut.shrink_margin}};
  j["appearance"] = {{"components", cfg.appearance.components},
                     {"max_samples", cfg.appearance.max_samples}};
  j["edges"] = {{"sigma_color", cfg.edges.sigma_color},
                {"spatial_weight", cfg.edges.spatial_weight},
                {"temporal_weight", cfg.edges.temporal_weight}};
  j["prior_floor"] = cfg.prior_floor;
  j["nms_threshold"] = cfg.nms_threshold;
  j["merge_threshold"] = cfg.merge_threshold;
  j["solver"] = solver_name(cfg.solver);
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  return j.dump(2) + "\n";
}

}  // namespace vidseg
