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
#include "vidseg/gmm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <tuple>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "vidseg/errors.hpp"

namespace vidseg {

namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

Eigen::Matrix3d floor_eigenvalues(const Eigen::Matrix3d& cov) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  Eigen::Vector3d ev = es.eigenvalues().cwiseMax(kVarianceFloor);
  Eigen::Matrix3d out = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (out + out.transpose());
}

// Log of the sum of exp(v[i]) over the finite entries.
double log_sum_exp(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

constexpr std::size_t kStackComponents = 16;

}  // namespace

Gmm::Gmm(std::vector<GmmComponent> components) : components_(std::move(components)) {
  precompute();
}

Gmm Gmm::uniform() {
  Gmm g;
  g.degenerate_ = true;
  return g;
}

void Gmm::precompute() {
  log_norm_.clear();
  inverse_.clear();
  for (const auto& c : components_) {
    const double det = c.covariance.determinant();
    log_norm_.push_back(c.weight > 0.0
                            ? std::log(c.weight) - 1.5 * kLog2Pi - 0.5 * std::log(det)
                            : -std::numeric_limits<double>::infinity());
    inverse_.push_back(c.covariance.inverse());
  }
}

double Gmm::log_density(const Eigen::Vector3d& x) const {
  if (degenerate_) return -3.0 * std::log(256.0);
  const std::size_t k = components_.size();
  if (k > kStackComponents) {
    std::vector<double> resp(k);
    return posterior(x, resp);
  }
  std::array<double, kStackComponents> resp;
  return posterior(x, std::span<double>(resp.data(), k));
}

std::vector<double> Gmm::responsibilities(const Eigen::Vector3d& x) const {
  std::vector<double> r(components_.size(), 0.0);
  if (degenerate_ || components_.empty()) return r;
  posterior(x, r);
  return r;
}

double Gmm::posterior(const Eigen::Vector3d& x, std::span<double> resp) const {
  if (degenerate_) {
    std::fill(resp.begin(), resp.end(), 0.0);
    return -3.0 * std::log(256.0);
  }
  const std::size_t k = components_.size();
  for (std::size_t c = 0; c < k; ++c) {
    if (components_[c].weight <= 0.0) {
      resp[c] = -std::numeric_limits<double>::infinity();
      continue;
    }
    const Eigen::Vector3d d = x - components_[c].mean;
    resp[c] = log_norm_[c] - 0.5 * d.dot(inverse_[c] * d);
  }
  const double total = log_sum_exp(resp.first(k));
  for (std::size_t c = 0; c < k; ++c) resp[c] = std::exp(resp[c] - total);
  return total;
}

double gmm_score(const Gmm& g, Rgb pixel) { return g.log_density(to_vec(pixel)); }

double mean_log_likelihood(const Gmm& g, std::span<const Eigen::Vector3d> samples) {
  if (samples.empty()) return 0.0;
  double s = 0.0;
  for (const auto& x : samples) s += g.log_density(x);
  return s / static_cast<double>(samples.size());
}

Gmm fit_gmm(std::span<const Eigen::Vector3d> samples, int k,
            const GmmFitOptions& opts, GmmFitTrace* trace) {
  if (samples.empty()) throw InputError("fit_gmm: no samples");
  if (k < 1) throw InputError("fit_gmm: component count must be >= 1");
  const auto n = samples.size();

  std::set<std::tuple<double, double, double>> distinct;
  for (const auto& s : samples) {
    distinct.emplace(s.x(), s.y(), s.z());
    if (static_cast<int>(distinct.size()) >= k) break;
  }
  k = std::min<int>(k, static_cast<int>(distinct.size()));

  // Farthest-point seeding.
  std::mt19937_64 rng(opts.seed);
  std::vector<Eigen::Vector3d> centers;
  centers.push_back(samples[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)]);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (static_cast<int>(centers.size()) < k) {
    std::size_t far = 0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], (samples[i] - centers.back()).squaredNorm());
      if (nearest[i] > nearest[far]) far = i;
    }
    centers.push_back(samples[far]);
  }

  // Hard assignment to the nearest center gives the starting mixture.
  std::vector<double> resp(n * k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    int best = 0;
    for (int c = 1; c < k; ++c)
      if ((samples[i] - centers[c]).squaredNorm() <
          (samples[i] - centers[best]).squaredNorm())
        best = c;
    resp[i * k + best] = 1.0;
  }

  std::vector<GmmComponent> comps(k);
  for (int c = 0; c < k; ++c) comps[c].mean = centers[c];
  auto m_step = [&] {
    for (int c = 0; c < k; ++c) {
      double nk = 0.0;
      Eigen::Vector3d mean = Eigen::Vector3d::Zero();
      for (std::size_t i = 0; i < n; ++i) {
        nk += resp[i * k + c];
        mean += resp[i * k + c] * samples[i];
      }
      if (nk <= 0.0) {
        comps[c].weight = 0.0;
        continue;
      }
      mean /= nk;
      Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
      for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector3d d = samples[i] - mean;
        cov += resp[i * k + c] * d * d.transpose();
      }
      comps[c].weight = nk / static_cast<double>(n);
      comps[c].mean = mean;
      comps[c].covariance = floor_eigenvalues(cov / nk);
    }
  };
  // E-step: fills resp and returns the total log-likelihood of the model.
  auto e_step = [&](const Gmm& g) {
    double ll = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      ll += g.posterior(samples[i], std::span<double>(resp.data() + i * k, k));
    return ll;
  };

  m_step();
  Gmm model(comps);
  double ll = e_step(model);
  if (trace) trace->log_likelihood.assign(1, ll);
  for (int it = 0; it < opts.max_iterations; ++it) {
    m_step();
    Gmm next(comps);
    const double next_ll = e_step(next);
    if (trace) trace->log_likelihood.push_back(next_ll);
    const double change = std::abs(next_ll - ll) / std::max(std::abs(ll), 1e-300);
    model = std::move(next);
    ll = next_ll;
    if (change < opts.tolerance) break;
  }
  return model;
}

}  // namespace vidseg
