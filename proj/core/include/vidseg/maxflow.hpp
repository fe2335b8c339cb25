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
#ifndef VIDSEG_MAXFLOW_HPP
#define VIDSEG_MAXFLOW_HPP

#include <vector>

namespace vidseg {

/// s-t max-flow by shortest augmenting paths in level graphs (Dinic).
/// Capacities are non-negative doubles; residuals at or below `epsilon` are
/// treated as saturated.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes, double epsilon = 1e-12);

  int add_node();
  int source() const { return source_; }
  int sink() const { return sink_; }

  /// Directed arc u -> v with capacity cap and reverse capacity rev_cap.
  void add_edge(int u, int v, double cap, double rev_cap = 0.0);

  double solve();

  /// After solve(): true when u is reachable from the source in the residual
  /// graph (the source side of the minimum cut).
  bool on_source_side(int u) const { return reach_[u]; }

 private:
  struct Arc {
    int to;
    int rev;
    double cap;
  };

  bool build_levels();
  double push(int u, double limit);

  int source_;
  int sink_;
  double eps_;
  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> next_arc_;
  std::vector<char> reach_;
};

/// Minimizer of a pseudo-boolean energy with unary and submodular pairwise
/// terms, by reduction to a minimum cut. Variables in the source set take 0.
class BinaryCut {
 public:
  explicit BinaryCut(int variables);

  int size() const { return n_; }

  /// Adds e0 when x_v = 0 and e1 when x_v = 1.
  void add_unary(int v, double e0, double e1);

  /// Adds E(x_p, x_q) given by its table. Requires e00 + e11 <= e01 + e10 (up
  /// to rounding); throws InputError otherwise.
  void add_pairwise(int p, int q, double e00, double e01, double e10, double e11);

  /// Solves and returns the minimum energy; labels via label().
  double minimize();
  int label(int v) const { return labels_[v]; }
  const std::vector<int>& labels() const { return labels_; }

 private:
  int n_;
  double constant_ = 0.0;
  std::vector<double> unary0_;
  std::vector<double> unary1_;
  struct Pair {
    int p, q;
    double cap;
  };
  std::vector<Pair> pairs_;
  std::vector<int> labels_;
};

}  // namespace vidseg

#endif  // VIDSEG_MAXFLOW_HPP
