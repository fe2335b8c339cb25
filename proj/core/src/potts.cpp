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
#include "vidseg/potts.hpp"

#include <cmath>
#include <cstdint>

#include "vidseg/errors.hpp"
#include "vidseg/maxflow.hpp"

namespace vidseg {

UnaryTable::UnaryTable(int nodes, int labels, double fill)
    : nodes_(nodes), labels_(labels),
      values_(static_cast<std::size_t>(nodes) * labels, fill) {
  if (nodes < 0 || labels < 1) throw InputError("invalid unary table shape");
}

namespace {

void check_labeling(const UnaryTable& unary, const Labeling& labels) {
  if (static_cast<int>(labels.size()) != unary.nodes()) {
    throw InputError("labeling size does not match the node count");
  }
  for (int l : labels)
    if (l < 0 || l >= unary.labels()) throw InputError("label out of range");
}

struct Neighbor {
  int node;
  double weight;
};

std::vector<std::vector<Neighbor>> adjacency(std::span<const PottsEdge> edges, int n) {
  std::vector<std::vector<Neighbor>> adj(n);
  for (const auto& e : edges) {
    if (e.a < 0 || e.b < 0 || e.a >= n || e.b >= n) throw InputError("edge endpoint out of range");
    adj[e.a].push_back({e.b, e.weight});
    adj[e.b].push_back({e.a, e.weight});
  }
  return adj;
}

// Energy change of moving v from label `from` to label `to`.
double move_delta(const UnaryTable& unary, const std::vector<Neighbor>& nbrs,
                  const Labeling& labels, int v, int from, int to) {
  double d = unary(v, to) - unary(v, from);
  for (const auto& nb : nbrs) {
    const int l = labels[nb.node];
    d += nb.weight * ((to != l) - (from != l));
  }
  return d;
}

}  // namespace

double potts_energy(std::span<const PottsEdge> edges, const UnaryTable& unary,
                    const Labeling& labels) {
  check_labeling(unary, labels);
  double e = 0.0;
  for (int v = 0; v < unary.nodes(); ++v) e += unary(v, labels[v]);
  for (const auto& edge : edges)
    if (labels[edge.a] != labels[edge.b]) e += edge.weight;
  return e;
}

Labeling unary_argmin(const UnaryTable& unary) {
  Labeling out(unary.nodes(), 0);
  for (int v = 0; v < unary.nodes(); ++v)
    for (int l = 1; l < unary.labels(); ++l)
      if (unary(v, l) < unary(v, out[v])) out[v] = l;
  return out;
}

Labeling solve_bruteforce(std::span<const PottsEdge> edges, const UnaryTable& unary) {
  const int n = unary.nodes();
  const int k = unary.labels();
  double states = std::pow(static_cast<double>(k), n);
  if (states > static_cast<double>(1 << 24)) {
    throw SizeError("brute force over " + std::to_string(k) + "^" + std::to_string(n) +
                    " labelings exceeds 2^24");
  }
  Labeling cur(n, 0);
  if (n == 0) return cur;
  const auto adj = adjacency(edges, n);

  Labeling best = cur;
  double best_e = potts_energy(edges, unary, cur);
  double e = best_e;
  auto tol = [](double x) { return 1e-9 * (1.0 + std::abs(x)); };
  // Odometer with the last node as the fastest digit enumerates labelings in
  // lexicographic order, so the first strict minimum found is the smallest.
  const auto total = static_cast<std::uint64_t>(states);
  for (std::uint64_t step = 1; step < total; ++step) {
    int i = n - 1;
    while (cur[i] == k - 1) {
      e += move_delta(unary, adj[i], cur, i, k - 1, 0);
      cur[i] = 0;
      --i;
    }
    e += move_delta(unary, adj[i], cur, i, cur[i], cur[i] + 1);
    ++cur[i];
    if (i < n - 3) e = potts_energy(edges, unary, cur);  // bound rounding drift
    if (e <= best_e + tol(best_e)) {
      const double exact = potts_energy(edges, unary, cur);
      e = exact;
      if (exact < best_e) {
        best_e = exact;
        best = cur;
      }
    }
  }
  return best;
}

Labeling solve_icm(std::span<const PottsEdge> edges, const UnaryTable& unary,
                   Labeling init, SolverTrace* trace) {
  check_labeling(unary, init);
  const int n = unary.nodes();
  const auto adj = adjacency(edges, n);
  Labeling cur = std::move(init);
  if (trace) trace->energy.assign(1, potts_energy(edges, unary, cur));
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      int best = cur[v];
      double best_delta = 0.0;
      for (int l = 0; l < unary.labels(); ++l) {
        if (l == cur[v]) continue;
        const double d = move_delta(unary, adj[v], cur, v, cur[v], l);
        if (d < best_delta) {
          best_delta = d;
          best = l;
        }
      }
      if (best != cur[v]) {
        cur[v] = best;
        changed = true;
        if (trace) trace->energy.push_back(potts_energy(edges, unary, cur));
      }
    }
  }
  return cur;
}

namespace {

Labeling expansion_move(std::span<const PottsEdge> edges, const UnaryTable& unary,
                        const Labeling& cur, int alpha) {
  const int n = unary.nodes();
  BinaryCut cut(n);  // x_v = 1: v switches to alpha
  for (int v = 0; v < n; ++v) cut.add_unary(v, unary(v, cur[v]), unary(v, alpha));
  for (const auto& e : edges) {
    const int lp = cur[e.a], lq = cur[e.b];
    const double e00 = lp != lq ? e.weight : 0.0;
    const double e01 = lp != alpha ? e.weight : 0.0;
    const double e10 = alpha != lq ? e.weight : 0.0;
    cut.add_pairwise(e.a, e.b, e00, e01, e10, 0.0);
  }
  cut.minimize();
  Labeling next = cur;
  for (int v = 0; v < n; ++v)
    if (cut.label(v)) next[v] = alpha;
  return next;
}

}  // namespace

Labeling solve_alpha_expansion(std::span<const PottsEdge> edges,
                               const UnaryTable& unary, Labeling init,
                               SolverTrace* trace) {
  check_labeling(unary, init);
  Labeling cur = std::move(init);
  double cur_e = potts_energy(edges, unary, cur);
  if (trace) trace->energy.assign(1, cur_e);
  const int k = unary.labels();
  int since_progress = 0;
  for (int alpha = 0; since_progress < k; alpha = (alpha + 1) % k) {
    Labeling next = expansion_move(edges, unary, cur, alpha);
    const double next_e = potts_energy(edges, unary, next);
    if (next_e < cur_e) {
      cur = std::move(next);
      cur_e = next_e;
      since_progress = 0;
      if (trace) trace->energy.push_back(cur_e);
    } else {
      ++since_progress;
    }
  }
  return cur;
}

}  // namespace vidseg
