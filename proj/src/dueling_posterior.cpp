// Copyright 2026 The duelbo Authors. All rights reserved.
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

#include "duelbo/dueling_posterior.hpp"

#include <cmath>
#include <stdexcept>

#include "duelbo/errors.hpp"

namespace duelbo {

namespace {

constexpr double kRepairJitter = 1e-10;

}  // namespace

void ConfidenceParams::validate() const {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (!(norm_bound > 0.0)) {
    throw std::invalid_argument("norm bound must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
}

DuelingPosterior::DuelingPosterior(KernelSpec kernel, double lambda)
    : kernel_(kernel), lambda_(lambda), whitened_responses_(0) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("regularizer lambda must be positive");
  }
}

void DuelingPosterior::append(const Vector& x1, const Vector& x2, double d) {
  if (!std::isfinite(d)) {
    throw std::invalid_argument("dueling feedback must be finite");
  }
  if (x1.size() != x2.size() ||
      (!data_.empty() && x1.size() != data_.pairs.front().first.size())) {
    throw std::invalid_argument("append: dimension mismatch");
  }
  const auto t = static_cast<Eigen::Index>(data_.size());
  Vector cross(t);
  for (Eigen::Index s = 0; s < t; ++s) {
    const auto& [b1, b2] = data_.pairs[s];
    cross(s) = duel_gram_entry(kernel_, x1, x2, b1, b2);
  }
  const double diag = duel_gram_entry(kernel_, x1, x2, x1, x2) + lambda_;

  data_.pairs.emplace_back(x1, x2);
  data_.responses.push_back(d);

  if (factor_.append(cross, diag)) {
    const Vector row = factor_.last_row();
    const double prev = t > 0 ? row.head(t).dot(whitened_responses_) : 0.0;
    whitened_responses_.conservativeResize(t + 1);
    whitened_responses_(t) = (d - prev) / row(t);
    return;
  }
  rebuild_with_jitter();
}

void DuelingPosterior::rebuild_with_jitter() {
  const Matrix gram_full = gram();
  const auto n = gram_full.rows();
  Matrix regularized = gram_full;
  regularized.diagonal().array() += lambda_ + kRepairJitter;
  if (!factor_.reset(regularized)) {
    data_.pairs.pop_back();
    data_.responses.pop_back();
    throw NumericalError(
        "dueling posterior: factor not positive definite after jitter");
  }
  jitter_ = kRepairJitter;
  ++generation_;
  whitened_responses_ = factor_.solve_lower(
      Eigen::Map<const Vector>(data_.responses.data(), n));
}

Vector DuelingPosterior::features(const Vector& x) const {
  const auto t = static_cast<Eigen::Index>(data_.size());
  Vector k(t);
  for (Eigen::Index s = 0; s < t; ++s) {
    const auto& [a1, a2] = data_.pairs[s];
    k(s) = kernel_eval(kernel_, x, a1) - kernel_eval(kernel_, x, a2);
  }
  return k;
}

Vector DuelingPosterior::whitened_features(const Vector& x) const {
  return factor_.solve_lower(features(x));
}

double DuelingPosterior::mean(const Vector& x) const {
  if (data_.empty()) return 0.0;
  return whitened_features(x).dot(whitened_responses_);
}

double DuelingPosterior::covariance(const Vector& x, const Vector& y) const {
  const double prior = kernel_eval(kernel_, x, y);
  if (data_.empty()) return prior;
  return prior - whitened_features(x).dot(whitened_features(y));
}

double DuelingPosterior::psi(const Vector& x, const Vector& z) const {
  const double prior = kernel_eval(kernel_, x, x) + kernel_eval(kernel_, z, z) -
                       2.0 * kernel_eval(kernel_, x, z);
  if (data_.empty()) return std::max(prior, 0.0);
  // L^{-1}(k_t(x) - k_t(z)) is the whitened feature of the difference.
  const Vector diff = factor_.solve_lower(features(x) - features(z));
  return std::max(prior - diff.squaredNorm(), 0.0);
}

double DuelingPosterior::log_det() const {
  return factor_.log_det() -
         static_cast<double>(data_.size()) * std::log(lambda_);
}

Matrix DuelingPosterior::gram() const {
  const auto t = static_cast<Eigen::Index>(data_.size());
  Matrix k(t, t);
  for (Eigen::Index i = 0; i < t; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto& [a1, a2] = data_.pairs[i];
      const auto& [b1, b2] = data_.pairs[j];
      k(i, j) = duel_gram_entry(kernel_, a1, a2, b1, b2);
      k(j, i) = k(i, j);
    }
  }
  return k;
}

double confidence_beta(double log_det, double lambda,
                       const ConfidenceParams& conf) {
  const double root =
      conf.rho * std::sqrt(std::max(log_det, 0.0) +
                           2.0 * std::log(1.0 / conf.delta)) +
      std::sqrt(lambda) * conf.norm_bound;
  return root * root;
}

double beta(const DuelingPosterior& post, const ConfidenceParams& conf) {
  return confidence_beta(post.log_det(), post.lambda(), conf);
}

double info_gain(const DuelingPosterior& post, const Vector& x1,
                 const Vector& x2) {
  return std::log1p(post.psi(x1, x2) / post.lambda());
}

}  // namespace duelbo
