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

#ifndef DUELBO_KERNEL_HPP_
#define DUELBO_KERNEL_HPP_

#include <Eigen/Core>
#include <string>

namespace duelbo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class KernelFamily { kLinear, kRbf };

// Kernel family plus hyperparameters. The RBF lengthscale is in input units:
// k(x, y) = exp(-|x - y|^2 / (2 l^2)). The linear kernel is only bounded by
// one on inputs of norm at most one.
struct KernelSpec {
  KernelFamily family = KernelFamily::kLinear;
  double lengthscale = 1.0;

  static KernelSpec Linear() { return {KernelFamily::kLinear, 1.0}; }
  static KernelSpec Rbf(double lengthscale);
};

std::string to_string(KernelFamily family);
KernelFamily kernel_family_from_string(const std::string& name);

// Throws std::invalid_argument on dimension mismatch or a non-positive
// RBF lengthscale.
double kernel_eval(const KernelSpec& spec, const Vector& x, const Vector& y);

// Gram entry between the dueling features of pairs (a1, a2) and (b1, b2):
// k(a1,b1) - k(a1,b2) - k(a2,b1) + k(a2,b2).
double duel_gram_entry(const KernelSpec& spec, const Vector& a1,
                       const Vector& a2, const Vector& b1, const Vector& b2);

// Dense Gram matrix over the rows of `points`.
Matrix gram_matrix(const KernelSpec& spec, const Matrix& points);

}  // namespace duelbo

#endif  // DUELBO_KERNEL_HPP_
