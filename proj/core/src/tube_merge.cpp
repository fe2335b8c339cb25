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
#include "vidseg/tube_merge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vidseg/errors.hpp"

namespace vidseg {

double prior_correlation(const PriorSequence& a, const PriorSequence& b) {
  const std::size_t frames = std::min(a.size(), b.size());
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t t = 0; t < frames; ++t) {
    const PixelMask& ma = a[t];
    const PixelMask& mb = b[t];
    if (ma.size() == 0 || mb.size() == 0) continue;
    if (ma.size() != mb.size()) throw InputError("prior frames differ in size");
    double fd = 0.0, fa = 0.0, fb = 0.0;
    for (std::size_t p = 0; p < ma.size(); ++p) {
      fd += ma[p] * mb[p];
      fa += ma[p] * ma[p];
      fb += mb[p] * mb[p];
    }
    if (fa == 0.0 || fb == 0.0) continue;  // not an overlapping frame
    dot += fd;
    na += fa;
    nb += fb;
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace {

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

Tube fuse(std::span<const Tube> members) {
  Tube out;
  out.category = members.front().category;
  int lo = members.front().first_frame, hi = members.front().last_frame();
  out.path_score = members.front().path_score;
  for (const Tube& t : members) {
    lo = std::min(lo, t.first_frame);
    hi = std::max(hi, t.last_frame());
    out.path_score = std::max(out.path_score, t.path_score);
    out.detection_ids.insert(out.detection_ids.end(), t.detection_ids.begin(),
                             t.detection_ids.end());
  }
  std::sort(out.detection_ids.begin(), out.detection_ids.end());
  out.first_frame = lo;
  const auto len = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::optional<BoundingBox>> boxes(len);
  out.provenance.assign(len, Provenance::kMissing);
  for (const Tube& t : members) {
    for (int f = t.first_frame; f <= t.last_frame(); ++f) {
      const auto b = t.box_at(f);
      if (!b) continue;
      auto& slot = boxes[f - lo];
      slot = slot ? bounding_union(*slot, *b) : *b;
      auto& prov = out.provenance[f - lo];
      const Provenance p = t.provenance[f - t.first_frame];
      if (prov != Provenance::kDetected) prov = p;
    }
  }
  // Frames no member covers: blend the nearest boxes on either side.
  for (std::size_t k = 0; k < len; ++k) {
    if (boxes[k]) continue;
    std::size_t r = k;
    while (!boxes[r]) ++r;
    const BoundingBox a = *boxes[k - 1], b = *boxes[r];
    for (std::size_t j = k; j < r; ++j) {
      const double w = static_cast<double>(j - k + 1) / static_cast<double>(r - k + 1);
      auto mix = [w](int p, int q) { return static_cast<int>(std::lround((1 - w) * p + w * q)); };
      boxes[j] = BoundingBox(mix(a.x_min(), b.x_min()), mix(a.y_min(), b.y_min()),
                             mix(a.x_max(), b.x_max()), mix(a.y_max(), b.y_max()));
      out.provenance[j] = Provenance::kInterpolated;
    }
    k = r;
  }
  for (auto& b : boxes) out.boxes.push_back(*b);
  return out;
}

PriorSequence fuse_priors(std::span<const PriorSequence> members) {
  PriorSequence out = members.front();
  for (std::size_t m = 1; m < members.size(); ++m) {
    if (members[m].size() > out.size()) out.resize(members[m].size());
    for (std::size_t t = 0; t < members[m].size(); ++t) {
      if (members[m][t].size() == 0) continue;
      out[t] = out[t].size() == 0 ? members[m][t] : max_of(out[t], members[m][t]);
    }
  }
  return out;
}

}  // namespace

MergeResult merge_tubes(std::span<const Tube> tubes,
                        std::span<const PriorSequence> priors, double threshold) {
  if (tubes.size() != priors.size()) {
    throw InputError("merge_tubes: " + std::to_string(tubes.size()) + " tubes but " +
                     std::to_string(priors.size()) + " priors");
  }
  MergeResult cur;
  cur.tubes.assign(tubes.begin(), tubes.end());
  cur.priors.assign(priors.begin(), priors.end());
  for (std::size_t i = 0; i < tubes.size(); ++i) cur.groups.push_back({static_cast<int>(i)});

  while (true) {
    const int n = static_cast<int>(cur.tubes.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    bool any = false;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (cur.tubes[i].category != cur.tubes[j].category) continue;
        if (prior_correlation(cur.priors[i], cur.priors[j]) >= threshold) {
          parent[find(parent, j)] = find(parent, i);
          any = true;
        }
      }
    if (!any) return cur;

    // Roots are visited in ascending order of their smallest member.
    std::vector<std::vector<int>> components(n);
    for (int i = 0; i < n; ++i) components[find(parent, i)].push_back(i);
    std::vector<std::vector<int>> ordered;
    for (auto& c : components)
      if (!c.empty()) ordered.push_back(std::move(c));
    std::sort(ordered.begin(), ordered.end());

    MergeResult next;
    for (const auto& comp : ordered) {
      std::vector<Tube> mt;
      std::vector<PriorSequence> mp;
      std::vector<int> group;
      for (int i : comp) {
        mt.push_back(cur.tubes[i]);
        mp.push_back(cur.priors[i]);
        group.insert(group.end(), cur.groups[i].begin(), cur.groups[i].end());
      }
      std::sort(group.begin(), group.end());
      next.tubes.push_back(comp.size() == 1 ? mt.front() : fuse(mt));
      next.priors.push_back(comp.size() == 1 ? mp.front() : fuse_priors(mp));
      next.groups.push_back(std::move(group));
    }
    cur = std::move(next);
  }
}

}  // namespace vidseg
