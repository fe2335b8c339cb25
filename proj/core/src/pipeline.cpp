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
#include "vidseg/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "json.hpp"
#include "vidseg/appearance.hpp"
#include "vidseg/errors.hpp"
#include "vidseg/grabcut.hpp"
#include "vidseg/io.hpp"
#include "vidseg/motion_prior.hpp"
#include "vidseg/parallel.hpp"
#include "vidseg/potts.hpp"
#include "vidseg/superpixel_graph.hpp"
#include "vidseg/tube_linker.hpp"

namespace vidseg {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

class StageClock {
 public:
  explicit StageClock(PipelineReport* report) : report_(report), last_(Clock::now()) {}

  void lap(const char* stage) {
    const auto now = Clock::now();
    if (report_) {
      report_->stages.push_back({stage, std::chrono::duration<double>(now - last_).count()});
    }
    last_ = now;
  }

 private:
  PipelineReport* report_;
  Clock::time_point last_;
};

std::string frame_name(int t) { return "frame " + std::to_string(t); }

std::vector<fs::path> numbered_files(const fs::path& dir, std::initializer_list<const char*> exts) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    for (const char* e : exts)
      if (ext == e) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

int frame_threads(const PipelineConfig& cfg) { return resolve_threads(cfg.threads); }

}  // namespace

std::string frame_file_name(int frame, const char* extension) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%05d%s", frame, extension);
  return buf;
}

void validate_inputs(const VideoInputs& in, bool require_superpixels) {
  if (in.frames.empty()) {
    if (!in.detections.empty()) throw InputError("detections given for a video without frames");
    return;
  }
  const int w = in.frames[0].width(), h = in.frames[0].height();
  const int n = static_cast<int>(in.frames.size());
  for (int t = 0; t < n; ++t) {
    const Image& f = in.frames[t];
    if (f.empty() || f.width() != w || f.height() != h) {
      throw InputError(frame_name(t) + ": image is " + std::to_string(f.width()) + "x" +
                       std::to_string(f.height()) + ", expected " + std::to_string(w) + "x" +
                       std::to_string(h));
    }
  }
  if (static_cast<int>(in.flows.size()) < n - 1)
    throw InputError(frame_name(static_cast<int>(in.flows.size())) + ": missing optical flow");
  if (static_cast<int>(in.flows.size()) > n - 1)
    throw InputError(frame_name(n - 1) + ": flow given past the last frame pair");
  for (int t = 0; t + 1 < n; ++t) {
    const FlowField& f = in.flows[t];
    if (!f.valid() || f.width != w || f.height != h)
      throw InputError(frame_name(t) + ": flow does not match the frame size");
  }
  if (require_superpixels || !in.superpixels.empty()) {
    if (static_cast<int>(in.superpixels.size()) < n)
      throw InputError(frame_name(static_cast<int>(in.superpixels.size())) +
                       ": missing superpixel map");
    if (static_cast<int>(in.superpixels.size()) > n)
      throw InputError(frame_name(n) + ": superpixel map past the last frame");
    for (int t = 0; t < n; ++t) {
      if (in.superpixels[t].width() != w || in.superpixels[t].height() != h)
        throw InputError(frame_name(t) + ": superpixel map does not match the frame size");
    }
  }
  for (std::size_t i = 0; i < in.detections.size(); ++i) {
    const Detection& d = in.detections[i];
    try {
      validate(d);
    } catch (const InputError& e) {
      throw InputError("detection " + std::to_string(i) + ": " + e.what());
    }
    if (d.frame >= n)
      throw InputError(frame_name(d.frame) + ": detection beyond the last frame");
    if (!d.box.inside_frame(w, h))
      throw InputError(frame_name(d.frame) + ": detection box " + d.box.to_string() +
                       " leaves the image");
  }
}

std::string PipelineReport::to_json() const {
  nlohmann::ordered_json j;
  j["threads"] = threads;
  j["total_seconds"] = total_seconds;
  auto stages_json = nlohmann::ordered_json::array();
  for (const auto& s : stages) stages_json.push_back({{"stage", s.stage}, {"seconds", s.seconds}});
  j["stages"] = std::move(stages_json);
  return j.dump(2) + "\n";
}

std::vector<Tube> run_tracking(const VideoInputs& in, const PipelineConfig& cfg,
                               PipelineReport* report) {
  cfg.validate();
  validate_inputs(in, false);
  const int threads = frame_threads(cfg);
  StageClock clock(report);
  const SimilarityContext ctx(in.frames, in.flows);
  std::vector<Tube> tubes =
      extract_tubes(in.detections, ctx, cfg.similarity, cfg.linker, threads);
  clock.lap("tube_extraction");
  std::vector<Tube> dense(tubes.size());
  parallel_for(tubes.size(), threads, [&](std::size_t i) {
    dense[i] = interpolate_tube(tubes[i], in.frames, cfg.similarity.search_radius);
  });
  clock.lap("interpolation");
  std::vector<Tube> kept = tube_nms(dense, cfg.nms_threshold);
  clock.lap("tube_nms");
  return kept;
}

PipelineResult run_pipeline(const VideoInputs& in, const PipelineConfig& cfg) {
  const auto start = Clock::now();
  PipelineResult result;
  PipelineReport& report = result.report;
  report.threads = frame_threads(cfg);
  const int threads = report.threads;

  cfg.validate();
  validate_inputs(in, true);
  const int n = static_cast<int>(in.frames.size());

  std::vector<Tube> tubes = run_tracking(in, cfg, &report);
  StageClock clock(&report);

  if (tubes.empty() || n == 0) {
    for (const auto& f : in.frames) result.labels.emplace_back(f.width(), f.height(), 0);
    clock.lap("labeling");
    report.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
  }
  const int w = in.frames[0].width(), h = in.frames[0].height();

  // Inside-outside maps. The last frame reuses the flow into it.
  std::vector<PixelMask> inside(n);
  parallel_for(n, threads, [&](std::size_t t) {
    if (n < 2) {
      inside[t] = PixelMask(w, h);
      return;
    }
    const FlowField& f = in.flows[std::min<std::size_t>(t, n - 2)];
    inside[t] = inside_outside_map(motion_boundaries(f, cfg.motion), cfg.motion);
  });
  clock.lap("inside_outside_maps");

  // Box foregrounds and combined per-object evidence.
  const int k = static_cast<int>(tubes.size());
  std::vector<std::vector<PixelMask>> evidence(k, std::vector<PixelMask>(n, PixelMask(w, h)));
  std::vector<std::pair<int, int>> jobs;
  for (int i = 0; i < k; ++i)
    for (int t = tubes[i].first_frame; t <= tubes[i].last_frame(); ++t)
      if (tubes[i].box_at(t)) jobs.emplace_back(i, t);
  parallel_for(jobs.size(), threads, [&](std::size_t j) {
    const auto [i, t] = jobs[j];
    const BoundingBox box = *tubes[i].box_at(t);
    GrabcutConfig gc = cfg.grabcut;
    gc.seed = cfg.seed ^ (static_cast<std::uint64_t>(i) << 32) ^ static_cast<std::uint64_t>(t);
    const PixelMask fg = grabcut_box(in.frames[t], box, gc);
    evidence[i][t] = max_of(restrict_map(inside[t], box), fg);
  });
  clock.lap("foreground");

  std::vector<PriorSequence> priors(k);
  parallel_for(k, threads, [&](std::size_t i) {
    priors[i] = propagate_prior(evidence[i], in.flows, tubes[i].first_frame,
                                tubes[i].last_frame(), cfg.motion);
  });
  clock.lap("location_priors");

  MergeResult merged = merge_tubes(tubes, priors, cfg.merge_threshold);
  std::vector<std::vector<PixelMask>> merged_evidence;
  for (const auto& group : merged.groups) {
    std::vector<PixelMask> ev = evidence[group.front()];
    for (std::size_t g = 1; g < group.size(); ++g)
      for (int t = 0; t < n; ++t) ev[t] = max_of(ev[t], evidence[group[g]][t]);
    merged_evidence.push_back(std::move(ev));
  }
  clock.lap("tube_merging");

  AppearanceConfig app = cfg.appearance;
  app.seed = cfg.seed;
  const AppearanceModels models =
      build_appearance_models(merged_evidence, merged.tubes, in.frames, app);
  clock.lap("appearance_models");

  const SuperpixelVideoGraph graph =
      build_superpixel_graph(in.superpixels, in.frames, in.flows, cfg.edges);
  const UnaryTable unary =
      unary_potentials(graph, merged.priors, models, in.frames, cfg.prior_floor);
  clock.lap("graph_construction");

  const std::vector<PottsEdge> edges = graph.edges();
  Labeling labels = unary_argmin(unary);
  switch (cfg.solver) {
    case SolverKind::kExpansion: labels = solve_alpha_expansion(edges, unary, labels); break;
    case SolverKind::kIcm: labels = solve_icm(edges, unary, labels); break;
    case SolverKind::kBruteForce: labels = solve_bruteforce(edges, unary); break;
  }
  result.energy = potts_energy(edges, unary, labels);
  clock.lap("energy_minimization");

  result.labels = labeling_to_maps(graph, labels);
  result.tubes = std::move(merged.tubes);
  result.priors = std::move(merged.priors);
  result.merged_from = std::move(merged.groups);
  clock.lap("labeling");
  report.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

VideoInputs load_video_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw InputError("no such scene directory: " + dir.string());
  VideoInputs in;
  for (const auto& p : numbered_files(dir / "frames", {".ppm", ".png"}))
    in.frames.push_back(read_image(p));
  for (const auto& p : numbered_files(dir / "flow", {".flo"})) in.flows.push_back(read_flo_file(p));
  in.superpixels = load_label_dir(dir / "superpixels");
  if (fs::exists(dir / "detections.txt"))
    in.detections = read_detections_file(dir / "detections.txt");
  return in;
}

void save_video_dir(const fs::path& dir, const VideoInputs& in) {
  for (std::size_t t = 0; t < in.frames.size(); ++t)
    write_ppm(dir / "frames" / frame_file_name(static_cast<int>(t), ".ppm"), in.frames[t]);
  for (std::size_t t = 0; t < in.flows.size(); ++t)
    write_flo_file(dir / "flow" / frame_file_name(static_cast<int>(t), ".flo"), in.flows[t]);
  save_label_dir(dir / "superpixels", in.superpixels, true);
  write_detections_file(dir / "detections.txt", in.detections);
}

std::vector<LabelImage> load_label_dir(const fs::path& dir) {
  std::vector<LabelImage> out;
  for (const auto& p : numbered_files(dir, {".pgm"})) out.push_back(read_pgm(p));
  return out;
}

void save_label_dir(const fs::path& dir, const std::vector<LabelImage>& maps, bool force_16bit) {
  for (std::size_t t = 0; t < maps.size(); ++t)
    write_pgm(dir / frame_file_name(static_cast<int>(t), ".pgm"), maps[t], force_16bit);
}

void save_segmentation(const fs::path& dir, const PipelineResult& result,
                       const PipelineConfig& cfg) {
  save_label_dir(dir / "labels", result.labels);
  write_text_file(dir / "tubes.json", tubes_to_json(result.tubes));
  nlohmann::ordered_json m;
  m["frames"] = result.labels.size();
  m["width"] = result.labels.empty() ? 0 : result.labels.front().width();
  m["height"] = result.labels.empty() ? 0 : result.labels.front().height();
  m["solver"] = solver_name(cfg.solver);
  m["seed"] = cfg.seed;
  m["energy"] = result.energy;
  auto labels = nlohmann::ordered_json::array();
  labels.push_back({{"label", 0}, {"category", "background"}});
  for (std::size_t i = 0; i < result.tubes.size(); ++i) {
    const Tube& t = result.tubes[i];
    nlohmann::ordered_json e;
    e["label"] = i + 1;
    e["category"] = t.category;
    e["path_score"] = t.path_score;
    e["first_frame"] = t.first_frame;
    e["last_frame"] = t.last_frame();
    if (i < result.merged_from.size()) e["merged_from"] = result.merged_from[i];
    labels.push_back(std::move(e));
  }
  m["labels"] = std::move(labels);
  write_text_file(dir / "manifest.json", m.dump(2) + "\n");
}

}  // namespace vidseg
