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

#include "duelbo/cholesky.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

namespace duelbo {

void IncrementalCholesky::reserve(Eigen::Index n) {
  if (n <= factor_.rows()) return;
  const Eigen::Index cap = std::max<Eigen::Index>(n, 2 * factor_.rows());
  Eigen::MatrixXd grown = Eigen::MatrixXd::Zero(cap, cap);
  grown.topLeftCorner(size_, size_) = factor_.topLeftCorner(size_, size_);
  factor_.swap(grown);
}

bool IncrementalCholesky::append(const Eigen::VectorXd& cross, double diag) {
  Eigen::VectorXd row = solve_lower(cross);
  const double pivot_sq = diag - row.squaredNorm();
  if (!(pivot_sq > 0.0) || !std::isfinite(pivot_sq)) return false;
  reserve(size_ + 1);
  factor_.row(size_).head(size_) = row.transpose();
  factor_(size_, size_) = std::sqrt(pivot_sq);
  log_det_ += std::log(pivot_sq);
  ++size_;
  return true;
}

bool IncrementalCholesky::reset(const Eigen::MatrixXd& full) {
  Eigen::LLT<Eigen::MatrixXd> llt(full);
  if (llt.info() != Eigen::Success) return false;
  Eigen::MatrixXd lower = llt.matrixL();
  if (!lower.allFinite() || (lower.diagonal().array() <= 0.0).any()) {
    return false;
  }
  size_ = 0;
  reserve(full.rows());
  factor_.setZero();
  factor_.topLeftCorner(full.rows(), full.rows()) = lower;
  size_ = full.rows();
  log_det_ = 2.0 * lower.diagonal().array().log().sum();
  return true;
}

Eigen::VectorXd IncrementalCholesky::solve_lower(
    const Eigen::VectorXd& rhs) const {
  if (size_ == 0) return Eigen::VectorXd(0);
  return factor_.topLeftCorner(size_, size_)
      .triangularView<Eigen::Lower>()
      .solve(rhs);
}

Eigen::VectorXd IncrementalCholesky::last_row() const {
  return factor_.row(size_ - 1).head(size_).transpose();
}

}  // namespace duelbo
