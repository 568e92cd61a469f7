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

// Reference computations used as independent oracles in the unit tests.
// Everything here is recomputed from scratch with dense solves.

#ifndef DUELBO_TESTS_ORACLES_HPP_
#define DUELBO_TESTS_ORACLES_HPP_

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "duelbo/kernel.hpp"
#include "duelbo/random.hpp"

namespace duelbo::testing {

inline double rbf(const Vector& x, const Vector& y, double l) {
  return std::exp(-(x - y).squaredNorm() / (2.0 * l * l));
}

inline double kern(const KernelSpec& k, const Vector& x, const Vector& y) {
  return k.family == KernelFamily::kLinear ? x.dot(y)
                                           : rbf(x, y, k.lengthscale);
}

struct DenseDueling {
  KernelSpec kernel;
  double lambda;
  std::vector<std::pair<Vector, Vector>> pairs;
  std::vector<double> d;

  Vector feat(const Vector& x) const {
    Vector v(pairs.size());
    for (std::size_t s = 0; s < pairs.size(); ++s) {
      v(s) = kern(kernel, x, pairs[s].first) - kern(kernel, x, pairs[s].second);
    }
    return v;
  }
  Matrix system() const {
    const auto n = static_cast<Eigen::Index>(pairs.size());
    Matrix k(n, n);
    for (Eigen::Index s = 0; s < n; ++s) k.row(s) = feat(pairs[s].first) -
                                                    feat(pairs[s].second);
    return k + lambda * Matrix::Identity(n, n);
  }
  double mean(const Vector& x) const {
    if (pairs.empty()) return 0.0;
    const Vector y = Eigen::Map<const Vector>(d.data(), d.size());
    return feat(x).dot(system().fullPivLu().solve(y));
  }
  double cov(const Vector& x, const Vector& z) const {
    if (pairs.empty()) return kern(kernel, x, z);
    return kern(kernel, x, z) -
           feat(x).dot(system().fullPivLu().solve(feat(z)));
  }
  double psi(const Vector& x, const Vector& z) const {
    return std::max(0.0, cov(x, x) + cov(z, z) - 2.0 * cov(x, z));
  }
  // log det(I + K / lambda) via LU.
  double log_det() const {
    if (pairs.empty()) return 0.0;
    const Matrix a = system() / lambda;
    Eigen::PartialPivLU<Matrix> lu(a);
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      s += std::log(std::abs(lu.matrixLU()(i, i)));
    }
    return s;
  }
};

inline Vector uniform_point(int dim, Rng& rng) {
  Vector x(dim);
  for (int i = 0; i < dim; ++i) x(i) = rng.uniform();
  return x;
}

inline Vector unit_vector(int dim, Rng& rng) {
  Vector x(dim);
  for (int i = 0; i < dim; ++i) x(i) = rng.normal();
  return x / x.norm();
}

}  // namespace duelbo::testing

#endif  // DUELBO_TESTS_ORACLES_HPP_
