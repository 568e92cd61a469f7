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

#ifndef DUELBO_CHOLESKY_HPP_
#define DUELBO_CHOLESKY_HPP_

#include <Eigen/Core>

namespace duelbo {

// Lower-triangular factor L of a growing SPD matrix A = L L^T, extended one
// bordered row at a time in O(n^2).
class IncrementalCholesky {
 public:
  Eigen::Index size() const { return size_; }

  // Borders A with column `cross` (length size()) and diagonal `diag`.
  // Returns false, leaving the factor untouched, if the new pivot is not
  // strictly positive.
  bool append(const Eigen::VectorXd& cross, double diag);

  // Replaces the factor with the Cholesky factor of `full`.
  // Returns false on failure, leaving the factor untouched.
  bool reset(const Eigen::MatrixXd& full);

  // Solves L v = rhs for the current factor.
  Eigen::VectorXd solve_lower(const Eigen::VectorXd& rhs) const;

  // log det(A) = 2 sum log L_ii.
  double log_det() const { return log_det_; }

  // Row `size()-1` of L after the last successful append.
  Eigen::VectorXd last_row() const;
  double pivot(Eigen::Index i) const { return factor_(i, i); }

  auto factor() const { return factor_.topLeftCorner(size_, size_); }

 private:
  void reserve(Eigen::Index n);

  Eigen::MatrixXd factor_;
  Eigen::Index size_ = 0;
  double log_det_ = 0.0;
};

}  // namespace duelbo

#endif  // DUELBO_CHOLESKY_HPP_
