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

#ifndef DUELBO_DUELING_POSTERIOR_HPP_
#define DUELBO_DUELING_POSTERIOR_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "duelbo/cholesky.hpp"
#include "duelbo/kernel.hpp"

namespace duelbo {

// Append-only record of played pairs and their difference feedback.
struct DuelingDataset {
  std::vector<std::pair<Vector, Vector>> pairs;
  std::vector<double> responses;

  std::size_t size() const { return responses.size(); }
  bool empty() const { return responses.empty(); }
};

// Scale parameters of the confidence coefficient.
struct ConfidenceParams {
  double rho = 1.0;         // sub-Gaussian scale of the dueling noise
  double norm_bound = 1.0;  // RKHS norm bound B
  double delta = 0.05;      // confidence level

  // Throws std::invalid_argument unless rho > 0, B > 0, 0 < delta < 1.
  void validate() const;
};

// Kernel least-squares estimate of f from dueling observations
// d_s ~ f(x_s^1) - f(x_s^2). The features of an input x are
// [k_t(x)]_s = k(x, x_s^1) - k(x, x_s^2) and the Gram matrix K_t has entries
// duel_gram_entry over pairs. A Cholesky factor of K_t + lambda I is kept and
// extended by one bordered row per observation.
//
// Single writer; const methods may be called concurrently between appends.
class DuelingPosterior {
 public:
  DuelingPosterior(KernelSpec kernel, double lambda);

  const KernelSpec& kernel() const { return kernel_; }
  double lambda() const { return lambda_; }
  const DuelingDataset& data() const { return data_; }
  std::size_t size() const { return data_.size(); }

  // Throws std::invalid_argument for non-finite d or inconsistent
  // dimensions, and NumericalError if the factor cannot be repaired by a
  // 1e-10 jitter.
  void append(const Vector& x1, const Vector& x2, double d);

  // k_t(x).
  Vector features(const Vector& x) const;
  // L^{-1} k_t(x); the posterior quantities below are inner products of these.
  Vector whitened_features(const Vector& x) const;

  double mean(const Vector& x) const;
  // Posterior covariance k(x, y) - k_t(x)^T (K_t + lambda I)^{-1} k_t(y).
  double covariance(const Vector& x, const Vector& y) const;
  // Posterior variance of f(x) - f(z):
  // k_t(x,x) + k_t(z,z) - 2 k_t(x,z), clamped at zero.
  double psi(const Vector& x, const Vector& z) const;

  // log det(I + K_t / lambda).
  double log_det() const;

  // Dense K_t, for diagnostics and tests.
  Matrix gram() const;

  const IncrementalCholesky& factor() const { return factor_; }
  // L^{-1} d.
  const Vector& whitened_responses() const { return whitened_responses_; }
  // Incremented whenever the factor is rebuilt from scratch; cached
  // whitened features computed under an older generation are stale.
  std::uint64_t generation() const { return generation_; }
  // Diagonal jitter added by the last rebuild (0 if never rebuilt).
  double jitter() const { return jitter_; }

 private:
  void rebuild_with_jitter();

  KernelSpec kernel_;
  double lambda_;
  DuelingDataset data_;
  IncrementalCholesky factor_;
  Vector whitened_responses_;
  std::uint64_t generation_ = 0;
  double jitter_ = 0.0;
};

// beta_{t,delta} = (rho sqrt(log det(I + K_t/lambda) + 2 log(1/delta))
//                   + sqrt(lambda) B)^2.
double confidence_beta(double log_det, double lambda,
                       const ConfidenceParams& conf);
double beta(const DuelingPosterior& post, const ConfidenceParams& conf);

// log(1 + psi_t(x1, x2) / lambda): the increase in log det(I + K/lambda)
// from observing the pair.
double info_gain(const DuelingPosterior& post, const Vector& x1,
                 const Vector& x2);

}  // namespace duelbo

#endif  // DUELBO_DUELING_POSTERIOR_HPP_
