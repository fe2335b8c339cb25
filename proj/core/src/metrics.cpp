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
#include "vidseg/metrics.hpp"

#include <algorithm>
#include <limits>

#include "vidseg/errors.hpp"

namespace vidseg {

namespace {

void check_aligned(std::span<const LabelImage> a, std::span<const LabelImage> b) {
  if (a.size() != b.size()) {
    throw InputError("prediction has " + std::to_string(a.size()) +
                     " frames, ground truth " + std::to_string(b.size()));
  }
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t].width() != b[t].width() || a[t].height() != b[t].height())
      throw InputError("frame " + std::to_string(t) + ": label map sizes differ");
  }
}

int max_label(std::span<const LabelImage> maps) {
  int k = 0;
  for (const auto& m : maps) k = std::max(k, static_cast<int>(m.max_label()));
  return k;
}

struct Counts {
  // overlap[p][g], with p and g including background at index 0.
  std::vector<std::vector<std::int64_t>> overlap;
  std::vector<std::int64_t> pred_area;
  std::vector<std::int64_t> truth_area;
};

Counts count(std::span<const LabelImage> pred, std::span<const LabelImage> truth) {
  const int kp = max_label(pred), kg = max_label(truth);
  Counts c;
  c.overlap.assign(kp + 1, std::vector<std::int64_t>(kg + 1, 0));
  c.pred_area.assign(kp + 1, 0);
  c.truth_area.assign(kg + 1, 0);
  for (std::size_t t = 0; t < pred.size(); ++t) {
    for (std::size_t i = 0; i < pred[t].size(); ++i) {
      const int p = pred[t][i], g = truth[t][i];
      if (p < 0 || g < 0) throw InputError("negative label in frame " + std::to_string(t));
      ++c.overlap[p][g];
      ++c.pred_area[p];
      ++c.truth_area[g];
    }
  }
  return c;
}

double f_from_counts(std::int64_t inter, std::int64_t pred, std::int64_t truth) {
  if (pred + truth == 0) return 0.0;
  return 2.0 * static_cast<double>(inter) / static_cast<double>(pred + truth);
}

}  // namespace

IouReport eval_iou(std::span<const LabelImage> predicted,
                   std::span<const LabelImage> ground_truth,
                   std::span<const char> annotated,
                   std::span<const std::string> categories) {
  check_aligned(predicted, ground_truth);
  if (!annotated.empty() && annotated.size() != ground_truth.size())
    throw InputError("annotation mask length differs from the sequence");
  const int k = max_label(ground_truth);
  std::vector<std::int64_t> inter(k + 1, 0), uni(k + 1, 0);
  for (std::size_t t = 0; t < ground_truth.size(); ++t) {
    if (!annotated.empty() && !annotated[t]) continue;
    for (std::size_t i = 0; i < ground_truth[t].size(); ++i) {
      const int g = ground_truth[t][i], p = predicted[t][i];
      if (g == p) {
        if (g > 0 && g <= k) ++inter[g], ++uni[g];
      } else {
        if (g > 0) ++uni[g];
        if (p > 0 && p <= k) ++uni[p];
      }
    }
  }
  IouReport r;
  std::map<std::string, std::pair<double, int>> cat;
  double total = 0.0;
  int n = 0;
  for (int g = 1; g <= k; ++g) {
    if (uni[g] == 0) {
      r.per_object.emplace_back();
      continue;
    }
    const double v = static_cast<double>(inter[g]) / static_cast<double>(uni[g]);
    r.per_object.emplace_back(v);
    const std::string name =
        static_cast<std::size_t>(g - 1) < categories.size() ? categories[g - 1] : "";
    cat[name].first += v;
    ++cat[name].second;
    total += v;
    ++n;
  }
  for (const auto& [name, acc] : cat) r.per_category[name] = acc.first / acc.second;
  if (n > 0) r.average = total / n;
  return r;
}

double f_measure(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

bool counts_as_segmented(double f) { return f >= kFmeasureThreshold - kFmeasureSlack; }

std::vector<int> max_assignment(const std::vector<std::vector<double>>& score) {
  const int rows = static_cast<int>(score.size());
  if (rows == 0) return {};
  const int cols = static_cast<int>(score.front().size());
  for (const auto& r : score)
    if (static_cast<int>(r.size()) != cols) throw InputError("ragged score matrix");
  const int n = std::max(rows, cols);
  double best = 0.0;
  for (const auto& r : score)
    for (double v : r) best = std::max(best, v);
  // Hungarian method (potentials, O(n^3)) on cost = best - score, padded square.
  auto cost = [&](int i, int j) {
    return (i < rows && j < cols) ? best - score[i][j] : best;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) minv[j] = cur, way[j] = j0;
        if (minv[j] < delta) delta = minv[j], j1 = j;
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> out(rows, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] >= 1 && p[j] <= rows && j <= cols) out[p[j] - 1] = j - 1;
  }
  return out;
}

FmeasureReport eval_fmeasure(std::span<const LabelImage> predicted,
                             std::span<const LabelImage> ground_truth) {
  check_aligned(predicted, ground_truth);
  const Counts c = count(predicted, ground_truth);
  const int kp = static_cast<int>(c.pred_area.size()) - 1;
  const int kg = static_cast<int>(c.truth_area.size()) - 1;
  FmeasureReport r;
  if (kg == 0) return r;
  std::vector<std::vector<double>> f(kg, std::vector<double>(kp, 0.0));
  for (int g = 1; g <= kg; ++g)
    for (int p = 1; p <= kp; ++p)
      f[g - 1][p - 1] = f_from_counts(c.overlap[p][g], c.pred_area[p], c.truth_area[g]);
  const std::vector<int> assign = kp > 0 ? max_assignment(f) : std::vector<int>(kg, -1);
  for (int g = 1; g <= kg; ++g) {
    FmeasurePair pair;
    pair.truth = g;
    const int p = assign[g - 1] + 1;
    if (p > 0) {
      const auto inter = c.overlap[p][g];
      pair.predicted = p;
      pair.precision = c.pred_area[p] ? static_cast<double>(inter) / c.pred_area[p] : 0.0;
      pair.recall = c.truth_area[g] ? static_cast<double>(inter) / c.truth_area[g] : 0.0;
      pair.f = f[g - 1][p - 1];
      if (counts_as_segmented(pair.f)) ++r.segmented;
    }
    r.pairs.push_back(pair);
  }
  return r;
}

std::vector<LabelImage> align_labels(std::span<const LabelImage> predicted,
                                     std::span<const LabelImage> ground_truth) {
  const FmeasureReport r = eval_fmeasure(predicted, ground_truth);
  std::vector<int> remap(max_label(predicted) + 1, 0);
  for (const auto& pair : r.pairs)
    if (pair.predicted > 0) remap[pair.predicted] = pair.truth;
  std::vector<LabelImage> out(predicted.begin(), predicted.end());
  for (auto& m : out)
    for (auto& v : m.labels()) v = remap[v];
  return out;
}

std::optional<double> tube_box_iou(const Tube& tube, const BoxTrack& truth) {
  double total = 0.0;
  int n = 0;
  for (int t = 0; t < static_cast<int>(truth.size()); ++t) {
    if (!truth[t]) continue;
    ++n;
    if (const auto b = tube.box_at(t)) total += iou(*b, *truth[t]);
  }
  if (n == 0) return std::nullopt;
  return total / n;
}

double tube_set_iou(std::span<const Tube> tubes, std::span<const BoxTrack> truth) {
  double total = 0.0;
  int n = 0;
  for (const BoxTrack& track : truth) {
    if (std::none_of(track.begin(), track.end(), [](const auto& b) { return b.has_value(); }))
      continue;
    double best = 0.0;
    for (const Tube& t : tubes) best = std::max(best, tube_box_iou(t, track).value_or(0.0));
    total += best;
    ++n;
  }
  return n > 0 ? total / n : 0.0;
}

int identity_switches(std::span<const Tube> tubes, std::span<const BoxTrack> truth,
                      double min_iou) {
  int switches = 0;
  for (const Tube& tube : tubes) {
    int current = -1;
    for (int t = tube.first_frame; t <= tube.last_frame(); ++t) {
      const auto box = tube.box_at(t);
      if (!box) continue;
      int best = -1;
      double best_iou = min_iou;
      for (int k = 0; k < static_cast<int>(truth.size()); ++k) {
        if (t >= static_cast<int>(truth[k].size()) || !truth[k][t]) continue;
        const double v = iou(*box, *truth[k][t]);
        if (v > best_iou) best_iou = v, best = k;
      }
      if (best < 0) continue;
      if (current >= 0 && best != current) ++switches;
      current = best;
    }
  }
  return switches;
}

}  // namespace vidseg
