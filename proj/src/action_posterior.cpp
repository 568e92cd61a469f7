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

#include "duelbo/action_posterior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace duelbo {

namespace {

constexpr double kNormSlack = 1e-9;

}  // namespace

ActionSet::ActionSet(Matrix pts) : points(std::move(pts)) {
  if (points.rows() == 0) {
    throw std::invalid_argument("action set must be non-empty");
  }
}

ActionPosterior::ActionPosterior(DuelingPosterior posterior, ActionSet actions)
    : post_(std::move(posterior)), actions_(std::move(actions)) {
  if (actions_.size() == 0) {
    throw std::invalid_argument("action set must be non-empty");
  }
  if (!post_.data().empty() &&
      post_.data().pairs.front().first.size() != actions_.dim()) {
    throw std::invalid_argument("action dimension disagrees with data");
  }
  if (post_.kernel().family == KernelFamily::kLinear &&
      (actions_.points.rowwise().norm().array() > 1.0 + kNormSlack).any()) {
    throw std::invalid_argument(
        "linear kernel requires actions with norm at most one");
  }
  gram_ = gram_matrix(post_.kernel(), actions_.points);
  recompute_cache();
}

void ActionPosterior::recompute_cache() {
  const Eigen::Index n = actions_.size();
  const auto t = static_cast<Eigen::Index>(post_.size());
  Matrix feats(t, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    feats.col(x) = post_.features(actions_.point(x));
  }
  white_ = Matrix::Zero(n, std::max<Eigen::Index>(2 * t, 16));
  if (t > 0) {
    white_.leftCols(t) = post_.factor()
                             .factor()
                             .triangularView<Eigen::Lower>()
                             .solve(feats)
                             .transpose();
    means_ = white_.leftCols(t) * post_.whitened_responses();
    white_sq_ = white_.leftCols(t).rowwise().squaredNorm();
  } else {
    means_ = Vector::Zero(n);
    white_sq_ = Vector::Zero(n);
  }
  generation_ = post_.generation();
}

void ActionPosterior::append(Eigen::Index first, Eigen::Index second,
                             double d) {
  if (first < 0 || first >= num_actions() || second < 0 ||
      second >= num_actions()) {
    throw std::out_of_range("action index out of range");
  }
  const auto t = static_cast<Eigen::Index>(post_.size());
  post_.append(actions_.point(first), actions_.point(second), d);
  if (post_.generation() != generation_) {
    recompute_cache();
    return;
  }
  if (t + 1 > white_.cols()) {
    Matrix grown = Matrix::Zero(white_.rows(), 2 * white_.cols());
    grown.leftCols(t) = white_.leftCols(t);
    white_.swap(grown);
  }
  const Vector row = post_.factor().last_row();
  Vector column = gram_.col(first) - gram_.col(second);
  if (t > 0) column.noalias() -= white_.leftCols(t) * row.head(t);
  column /= row(t);
  white_.col(t) = column;
  white_sq_ += column.cwiseAbs2();
  means_ += column * post_.whitened_responses()(t);
}

Vector ActionPosterior::psi_from(Eigen::Index anchor) const {
  const auto t = static_cast<Eigen::Index>(post_.size());
  Vector psi = gram_.diagonal().array() + gram_(anchor, anchor) -
               2.0 * gram_.col(anchor).array();
  if (t > 0) {
    const Vector cross = white_.leftCols(t) * white_.row(anchor).head(t).transpose();
    psi.array() -= white_sq_.array() + white_sq_(anchor) - 2.0 * cross.array();
  }
  psi = psi.cwiseMax(0.0);
  psi(anchor) = 0.0;
  return psi;
}

double ActionPosterior::psi(Eigen::Index i, Eigen::Index j) const {
  if (i == j) return 0.0;
  const auto t = static_cast<Eigen::Index>(post_.size());
  double value = gram_(i, i) + gram_(j, j) - 2.0 * gram_(i, j);
  if (t > 0) {
    value -= (white_.row(i).head(t) - white_.row(j).head(t)).squaredNorm();
  }
  return std::max(value, 0.0);
}

Vector ActionPosterior::info_gain_from(Eigen::Index anchor) const {
  const double inv_lambda = 1.0 / post_.lambda();
  return (psi_from(anchor) * inv_lambda).array().log1p();
}

}  // namespace duelbo
