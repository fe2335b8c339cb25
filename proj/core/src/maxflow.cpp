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
#include "vidseg/maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "vidseg/errors.hpp"

namespace vidseg {

MaxFlow::MaxFlow(int nodes, double epsilon)
    : source_(nodes), sink_(nodes + 1), eps_(epsilon), adj_(nodes + 2) {}

int MaxFlow::add_node() {
  adj_.emplace_back();
  return static_cast<int>(adj_.size()) - 1;
}

void MaxFlow::add_edge(int u, int v, double cap, double rev_cap) {
  if (cap < 0.0 || rev_cap < 0.0) throw InputError("negative capacity");
  if (u == v) return;
  adj_[u].push_back({v, static_cast<int>(adj_[v].size()), cap});
  adj_[v].push_back({u, static_cast<int>(adj_[u].size()) - 1, rev_cap});
}

bool MaxFlow::build_levels() {
  level_.assign(adj_.size(), -1);
  std::queue<int> q;
  level_[source_] = 0;
  q.push(source_);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const Arc& a : adj_[u]) {
      if (a.cap > eps_ && level_[a.to] < 0) {
        level_[a.to] = level_[u] + 1;
        q.push(a.to);
      }
    }
  }
  return level_[sink_] >= 0;
}

double MaxFlow::push(int u, double limit) {
  if (u == sink_) return limit;
  for (std::size_t& i = next_arc_[u]; i < adj_[u].size(); ++i) {
    Arc& a = adj_[u][i];
    if (a.cap <= eps_ || level_[a.to] != level_[u] + 1) continue;
    const double pushed = push(a.to, std::min(limit, a.cap));
    if (pushed > 0.0) {
      a.cap -= pushed;
      adj_[a.to][a.rev].cap += pushed;
      return pushed;
    }
  }
  return 0.0;
}

double MaxFlow::solve() {
  double flow = 0.0;
  while (build_levels()) {
    next_arc_.assign(adj_.size(), 0);
    while (true) {
      const double f = push(source_, std::numeric_limits<double>::infinity());
      if (f <= 0.0) break;
      flow += f;
    }
  }
  reach_.assign(adj_.size(), 0);
  std::queue<int> q;
  reach_[source_] = 1;
  q.push(source_);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const Arc& a : adj_[u]) {
      if (a.cap > eps_ && !reach_[a.to]) {
        reach_[a.to] = 1;
        q.push(a.to);
      }
    }
  }
  return flow;
}

BinaryCut::BinaryCut(int variables)
    : n_(variables), unary0_(variables, 0.0), unary1_(variables, 0.0) {}

void BinaryCut::add_unary(int v, double e0, double e1) {
  unary0_[v] += e0;
  unary1_[v] += e1;
}

void BinaryCut::add_pairwise(int p, int q, double e00, double e01, double e10,
                             double e11) {
  // E = e00 + (e10 - e00) x_p + (e11 - e10) x_q + (e01 + e10 - e00 - e11)(1 - x_p) x_q
  double coupling = e01 + e10 - e00 - e11;
  const double scale = std::max({std::abs(e00), std::abs(e01), std::abs(e10),
                                 std::abs(e11), 1.0});
  if (coupling < -1e-12 * scale) throw InputError("pairwise term is not submodular");
  coupling = std::max(coupling, 0.0);
  constant_ += e00;
  unary1_[p] += e10 - e00;
  unary1_[q] += e11 - e10;
  if (coupling > 0.0) pairs_.push_back({p, q, coupling});
}

double BinaryCut::minimize() {
  MaxFlow mf(n_);
  double constant = constant_;
  for (int v = 0; v < n_; ++v) {
    const double e0 = unary0_[v], e1 = unary1_[v];
    // Cutting source->v puts v in the sink set (x_v = 1); v->sink: x_v = 0.
    if (e1 >= e0) {
      constant += e0;
      if (e1 > e0) mf.add_edge(mf.source(), v, e1 - e0);
    } else {
      constant += e1;
      mf.add_edge(v, mf.sink(), e0 - e1);
    }
  }
  // (1 - x_p) x_q: paid when p is on the source side and q on the sink side.
  for (const Pair& pr : pairs_) mf.add_edge(pr.p, pr.q, pr.cap);
  const double cut = mf.solve();
  labels_.assign(n_, 0);
  for (int v = 0; v < n_; ++v) labels_[v] = mf.on_source_side(v) ? 0 : 1;
  return constant + cut;
}

}  // namespace vidseg
