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
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vidseg/config.hpp"
#include "vidseg/errors.hpp"
#include "vidseg/io.hpp"
#include "vidseg/metrics.hpp"
#include "vidseg/parallel.hpp"
#include "vidseg/pipeline.hpp"
#include "vidseg/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string solver;
  bool single_thread = false;
  std::string report;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_solver) {
  cmd->add_option("--config", o.config, "JSON configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "random seed");
  if (with_solver)
    cmd->add_option("--solver", o.solver, "energy minimizer")
        ->check(CLI::IsMember({"expansion", "icm", "brute"}));
  cmd->add_flag("--single-thread", o.single_thread, "run every stage on one thread");
  cmd->add_option("--report", o.report, "write per-stage timings as JSON");
}

vidseg::PipelineConfig make_config(const CommonOptions& o) {
  vidseg::PipelineConfig cfg;
  if (!o.config.empty()) cfg = vidseg::read_config_file(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (!o.solver.empty()) cfg.solver = vidseg::parse_solver(o.solver);
  if (o.single_thread) cfg.threads = 1;
  cfg.validate();
  return cfg;
}

void write_report(const CommonOptions& o, const vidseg::PipelineReport& report) {
  if (!o.report.empty()) vidseg::write_text_file(o.report, report.to_json());
}

ordered_json box_track_json(const vidseg::BoxTrack& track) {
  auto arr = ordered_json::array();
  for (const auto& b : track) {
    if (b) arr.push_back({b->x_min(), b->y_min(), b->x_max(), b->y_max()});
    else arr.push_back(nullptr);
  }
  return arr;
}

int cmd_synth(const std::string& preset, std::uint64_t seed, int frames, int jitter,
              double dropout, double fp_rate, const std::string& out) {
  vidseg::SceneSpec spec = vidseg::preset_scene(preset, seed);
  if (frames > 0) spec.frames = frames;
  spec.noise.jitter = jitter;
  spec.noise.dropout = dropout;
  spec.noise.false_positive_rate = fp_rate;
  const vidseg::SyntheticScene scene = vidseg::synthesize_scene(spec);
  const fs::path dir(out);
  vidseg::save_video_dir(dir, {scene.frames, scene.flows, scene.superpixels, scene.detections});
  vidseg::save_label_dir(dir / "gt", scene.ground_truth);
  ordered_json meta;
  meta["preset"] = preset;
  meta["seed"] = seed;
  meta["categories"] = scene.categories;
  auto boxes = ordered_json::array();
  for (const auto& track : scene.boxes) boxes.push_back(box_track_json(track));
  meta["boxes"] = std::move(boxes);
  meta["warnings"] = scene.warnings;
  vidseg::write_text_file(dir / "scene.json", meta.dump(2) + "\n");
  for (const auto& w : scene.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "wrote " << scene.frames.size() << " frames, " << scene.detections.size()
            << " detections to " << dir.string() << "\n";
  return 0;
}

int cmd_track(const CommonOptions& o, const std::string& input, const std::string& out) {
  const auto cfg = make_config(o);
  const auto in = vidseg::load_video_dir(input);
  vidseg::PipelineReport report;
  report.threads = vidseg::resolve_threads(cfg.threads);
  const auto start = std::chrono::steady_clock::now();
  const auto tubes = vidseg::run_tracking(in, cfg, &report);
  report.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string json = vidseg::tubes_to_json(tubes);
  if (out.empty() || out == "-") std::cout << json;
  else vidseg::write_text_file(out, json);
  write_report(o, report);
  return 0;
}

int cmd_segment(const CommonOptions& o, const std::string& input, const std::string& out) {
  const auto cfg = make_config(o);
  const auto in = vidseg::load_video_dir(input);
  const auto result = vidseg::run_pipeline(in, cfg);
  vidseg::save_segmentation(out, result, cfg);
  write_report(o, result.report);
  std::cout << result.tubes.size() << " objects, energy " << std::setprecision(10)
            << result.energy << "\n";
  return 0;
}

int cmd_eval(const std::string& pred_dir, const std::string& gt_dir) {
  const auto pred = vidseg::load_label_dir(pred_dir);
  const auto gt = vidseg::load_label_dir(gt_dir);
  if (gt.empty()) throw vidseg::InputError("no ground-truth label maps in " + gt_dir);
  const auto f = vidseg::eval_fmeasure(pred, gt);
  const auto aligned = vidseg::align_labels(pred, gt);
  const auto iou = vidseg::eval_iou(aligned, gt);
  ordered_json j;
  auto objects = ordered_json::array();
  for (std::size_t i = 0; i < f.pairs.size(); ++i) {
    const auto& p = f.pairs[i];
    ordered_json e;
    e["truth"] = p.truth;
    e["predicted"] = p.predicted;
    e["iou"] = i < iou.per_object.size() && iou.per_object[i] ? ordered_json(*iou.per_object[i])
                                                              : ordered_json(nullptr);
    e["precision"] = p.precision;
    e["recall"] = p.recall;
    e["f"] = p.f;
    e["segmented"] = vidseg::counts_as_segmented(p.f);
    objects.push_back(std::move(e));
  }
  j["objects"] = std::move(objects);
  j["average_iou"] = iou.average ? ordered_json(*iou.average) : ordered_json(nullptr);
  j["segmented"] = f.segmented;
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct AblationColumn {
  const char* name;
  std::vector<bool vidseg::SimilarityConfig::*> terms;
};

int cmd_ablate(const CommonOptions& o, const std::vector<std::string>& presets, int seeds,
               int jitter, double dropout) {
  using S = vidseg::SimilarityConfig;
  const std::vector<AblationColumn> columns = {
      {"score", {&S::use_score}},
      {"side", {&S::use_side}},
      {"vol", {&S::use_vol}},
      {"vol+side", {&S::use_vol, &S::use_side}},
      {"match", {&S::use_match}},
      {"center", {&S::use_center}},
      {"match+center", {&S::use_match, &S::use_center}},
      {"app", {&S::use_app}},
      {"all", {}}};
  const std::vector<bool S::*> all_terms = {&S::use_score, &S::use_app,   &S::use_vol,
                                            &S::use_side,  &S::use_match, &S::use_center};
  const auto base = make_config(o);

  std::vector<vidseg::SyntheticScene> scenes;
  for (const auto& p : presets) {
    for (int s = 0; s < seeds; ++s) {
      auto spec = vidseg::preset_scene(p, base.seed + static_cast<std::uint64_t>(s));
      spec.noise.jitter = jitter;
      spec.noise.dropout = dropout;
      scenes.push_back(vidseg::synthesize_scene(spec));
    }
  }
  auto score = [&](const vidseg::PipelineConfig& cfg) {
    double total = 0.0;
    for (const auto& sc : scenes) {
      const vidseg::VideoInputs in{sc.frames, sc.flows, {}, sc.detections};
      total += vidseg::tube_set_iou(vidseg::run_tracking(in, cfg), sc.boxes);
    }
    return 100.0 * total / static_cast<double>(scenes.size());
  };

  std::ostringstream minus, plus, head;
  head << std::setw(4) << "";
  minus << std::setw(4) << "-";
  plus << std::setw(4) << "+";
  for (const auto& col : columns) {
    const int width = std::max<int>(8, static_cast<int>(std::string(col.name).size()) + 2);
    head << std::setw(width) << col.name;
    auto dropped = base;
    auto sole = base;
    for (auto term : all_terms) sole.similarity.*term = col.terms.empty();
    for (auto term : col.terms) {
      dropped.similarity.*term = false;
      sole.similarity.*term = true;
    }
    minus << std::setw(width) << std::fixed << std::setprecision(2) << score(dropped);
    plus << std::setw(width) << std::fixed << std::setprecision(2) << score(sole);
  }
  std::cout << "tube box IoU (%) over " << scenes.size() << " synthetic scenes\n"
            << head.str() << "\n" << minus.str() << "\n" << plus.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detection-driven video object segmentation"};
  app.require_subcommand(1);

  CommonOptions track_opts, seg_opts, ablate_opts;
  std::string track_in, track_out = "-";
  auto* track = app.add_subcommand("track", "link detections into tubes");
  track->add_option("input", track_in, "scene directory")->required();
  track->add_option("-o,--out", track_out, "tube JSON output ('-' for stdout)");
  add_common(track, track_opts, false);

  std::string seg_in, seg_out;
  auto* segment = app.add_subcommand("segment", "run the full segmentation pipeline");
  segment->add_option("input", seg_in, "scene directory")->required();
  segment->add_option("-o,--out", seg_out, "output directory")->required();
  add_common(segment, seg_opts, true);

  std::string eval_pred, eval_gt;
  auto* eval = app.add_subcommand("eval", "IoU and F-measure of label maps");
  eval->add_option("predicted", eval_pred, "directory of predicted label maps")->required();
  eval->add_option("truth", eval_gt, "directory of ground-truth label maps")->required();

  std::string synth_preset = "single", synth_out;
  std::uint64_t synth_seed = 0;
  int synth_frames = 0, synth_jitter = 0;
  double synth_dropout = 0.0, synth_fp = 0.0;
  auto* synth = app.add_subcommand("synth", "render a synthetic scene directory");
  synth->add_option("--preset", synth_preset, "scene recipe")
      ->check(CLI::IsMember({"single", "crossing", "static"}));
  synth->add_option("--seed", synth_seed, "random seed");
  synth->add_option("--frames", synth_frames, "override the frame count");
  synth->add_option("--jitter", synth_jitter, "detection jitter in pixels");
  synth->add_option("--dropout", synth_dropout, "detection dropout rate");
  synth->add_option("--fp-rate", synth_fp, "false positives per frame");
  synth->add_option("-o,--out", synth_out, "output directory")->required();

  std::vector<std::string> ablate_presets = {"single", "crossing"};
  int ablate_seeds = 3, ablate_jitter = 2;
  double ablate_dropout = 0.2;
  auto* ablate = app.add_subcommand("ablate", "similarity-term ablation on synthetic scenes");
  ablate->add_option("--presets", ablate_presets, "scene recipes");
  ablate->add_option("--scenes", ablate_seeds, "seeds per recipe");
  ablate->add_option("--jitter", ablate_jitter, "detection jitter in pixels");
  ablate->add_option("--dropout", ablate_dropout, "detection dropout rate");
  add_common(ablate, ablate_opts, false);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*track) return cmd_track(track_opts, track_in, track_out);
    if (*segment) return cmd_segment(seg_opts, seg_in, seg_out);
    if (*eval) return cmd_eval(eval_pred, eval_gt);
    if (*synth)
      return cmd_synth(synth_preset, synth_seed, synth_frames, synth_jitter, synth_dropout,
                       synth_fp, synth_out);
    if (*ablate)
      return cmd_ablate(ablate_opts, ablate_presets, ablate_seeds, ablate_jitter, ablate_dropout);
  } catch (const vidseg::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const vidseg::FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
