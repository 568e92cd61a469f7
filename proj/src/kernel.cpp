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

#include "duelbo/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace duelbo {

KernelSpec KernelSpec::Rbf(double lengthscale) {
  if (!(lengthscale > 0.0)) {
    throw std::invalid_argument("RBF lengthscale must be positive");
  }
  return {KernelFamily::kRbf, lengthscale};
}

std::string to_string(KernelFamily family) {
  return family == KernelFamily::kLinear ? "linear" : "rbf";
}

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "linear") return KernelFamily::kLinear;
  if (name == "rbf") return KernelFamily::kRbf;
  throw std::invalid_argument("unknown kernel family: " + name);
}

double kernel_eval(const KernelSpec& spec, const Vector& x, const Vector& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("kernel_eval: dimension mismatch");
  }
  switch (spec.family) {
    case KernelFamily::kLinear:
      return x.dot(y);
    case KernelFamily::kRbf: {
      if (!(spec.lengthscale > 0.0)) {
        throw std::invalid_argument("RBF lengthscale must be positive");
      }
      const double sq = (x - y).squaredNorm();
      return std::exp(-sq / (2.0 * spec.lengthscale * spec.lengthscale));
    }
  }
  return 0.0;
}

double duel_gram_entry(const KernelSpec& spec, const Vector& a1,
                       const Vector& a2, const Vector& b1, const Vector& b2) {
  // Grouped so that a repeated action on either side cancels exactly.
  return (kernel_eval(spec, a1, b1) - kernel_eval(spec, a2, b1)) -
         (kernel_eval(spec, a1, b2) - kernel_eval(spec, a2, b2));
}

Matrix gram_matrix(const KernelSpec& spec, const Matrix& points) {
  const Eigen::Index n = points.rows();
  Matrix gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = kernel_eval(spec, points.row(i).transpose(),
                                   points.row(j).transpose());
      gram(i, j) = v;
      gram(j, i) = v;
    }
  }
  return gram;
}

}  // namespace duelbo
