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
#ifndef VIDSEG_POTTS_HPP
#define VIDSEG_POTTS_HPP

#include <span>
#include <vector>

namespace vidseg {

struct PottsEdge {
  int a = 0;
  int b = 0;
  double weight = 0.0;
};

using Labeling = std::vector<int>;

/// Node-by-label cost table, row-major.
class UnaryTable {
 public:
  UnaryTable() = default;
  UnaryTable(int nodes, int labels, double fill = 0.0);

  int nodes() const { return nodes_; }
  int labels() const { return labels_; }
  double& operator()(int v, int l) { return values_[static_cast<std::size_t>(v) * labels_ + l]; }
  double operator()(int v, int l) const {
    return values_[static_cast<std::size_t>(v) * labels_ + l];
  }

 private:
  int nodes_ = 0;
  int labels_ = 0;
  std::vector<double> values_;
};

/// Sum of selected unaries plus the weight of every edge whose endpoints
/// disagree.
double potts_energy(std::span<const PottsEdge> edges, const UnaryTable& unary,
                    const Labeling& labels);

/// Label minimizing each node's unary alone (ties: smallest label).
Labeling unary_argmin(const UnaryTable& unary);

/// Energy after the initial labeling and after every accepted move.
struct SolverTrace {
  std::vector<double> energy;
};

/// Exhaustive search; the lexicographically smallest optimal labeling wins.
/// Throws SizeError when labels^nodes exceeds 2^24.
Labeling solve_bruteforce(std::span<const PottsEdge> edges, const UnaryTable& unary);

/// Iterated conditional modes: sweeps nodes in id order, moving a node only
/// when that strictly lowers the energy, until a sweep changes nothing.
Labeling solve_icm(std::span<const PottsEdge> edges, const UnaryTable& unary,
                   Labeling init, SolverTrace* trace = nullptr);

/// Alpha-expansion with exact binary cuts. Cycles over labels, accepting an
/// expansion only if it strictly lowers the energy, until a full cycle makes
/// no progress.
Labeling solve_alpha_expansion(std::span<const PottsEdge> edges,
                               const UnaryTable& unary, Labeling init,
                               SolverTrace* trace = nullptr);

enum class SolverKind { kExpansion, kIcm, kBruteForce };

}  // namespace vidseg

#endif  // VIDSEG_POTTS_HPP
