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
#ifndef VIDSEG_GMM_HPP
#define VIDSEG_GMM_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "vidseg/image.hpp"

namespace vidseg {

inline constexpr double kVarianceFloor = 1.0;

struct GmmComponent {
  double weight = 0.0;
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Identity();
};

/// Gaussian mixture over RGB. A degenerate model (no training data) is the
/// uniform density over the 256^3 color cube.
class Gmm {
 public:
  Gmm() = default;
  explicit Gmm(std::vector<GmmComponent> components);

  static Gmm uniform();

  const std::vector<GmmComponent>& components() const { return components_; }
  int size() const { return static_cast<int>(components_.size()); }
  bool degenerate() const { return degenerate_; }

  /// log p(x).
  double log_density(const Eigen::Vector3d& x) const;
  /// Per-component posterior probabilities at x.
  std::vector<double> responsibilities(const Eigen::Vector3d& x) const;
  /// Writes the posteriors into resp (size() entries) and returns log p(x).
  double posterior(const Eigen::Vector3d& x, std::span<double> resp) const;

 private:
  void precompute();

  std::vector<GmmComponent> components_;
  // Cached per component: log weight + normalizer, and the inverse covariance.
  std::vector<double> log_norm_;
  std::vector<Eigen::Matrix3d> inverse_;
  bool degenerate_ = false;
};

inline Eigen::Vector3d to_vec(Rgb c) { return {double(c.r), double(c.g), double(c.b)}; }

double gmm_score(const Gmm& g, Rgb pixel);

struct GmmFitOptions {
  int max_iterations = 100;
  double tolerance = 1e-6;  // relative log-likelihood change
  std::uint64_t seed = 0;
};

/// Log-likelihood after initialization and after every EM iteration.
struct GmmFitTrace {
  std::vector<double> log_likelihood;
};

/// EM fit with farthest-point seeding (first center drawn from the seeded
/// RNG). K shrinks to the number of distinct samples when there are fewer.
/// Covariance eigenvalues are floored at kVarianceFloor. Throws InputError
/// for an empty sample.
Gmm fit_gmm(std::span<const Eigen::Vector3d> samples, int k,
            const GmmFitOptions& opts = {}, GmmFitTrace* trace = nullptr);

/// Mean log-density of the samples under g.
double mean_log_likelihood(const Gmm& g, std::span<const Eigen::Vector3d> samples);

}  // namespace vidseg

#endif  // VIDSEG_GMM_HPP
