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

#ifndef DUELBO_IDS_HPP_
#define DUELBO_IDS_HPP_

#include <utility>

#include "duelbo/action_posterior.hpp"
#include "duelbo/random.hpp"

namespace duelbo {

// Candidates whose information gain does not exceed this are skipped.
inline constexpr double kMinInfoGain = 1e-12;

// Gap estimates relative to the empirical maximizer.
struct GapState {
  Eigen::Index x_star_hat = 0;
  double delta_t = 0.0;  // largest plausible regret of x_star_hat
  Vector gaps;           // delta_t + mean(x_star_hat) - mean(x)
};

struct IdsDecision {
  Eigen::Index x_star_hat = 0;
  Eigen::Index z = 0;
  double p = 0.0;
  std::pair<Eigen::Index, Eigen::Index> pair_played{0, 0};
  bool informative = false;

  // Diagnostics of the selected candidate (zero for the greedy fallback).
  double delta_t = 0.0;
  double gap_z = 0.0;
  double info_z = 0.0;
  double objective = 0.0;

  bool greedy_fallback() const { return p == 0.0; }
};

// Index of the largest posterior mean; ties go to the lowest index.
Eigen::Index estimate_argmax(const ActionPosterior& post);

// max_z mean(z) - mean(x_star_hat) + sqrt(beta psi(x_star_hat, z)).
// Throws std::invalid_argument for negative beta.
double compute_delta_t(const ActionPosterior& post, double beta_val);

GapState gap_estimates(const ActionPosterior& post, double beta_val);

// Minimizer over p in [0, 1] of the trade-off for a fixed candidate:
// min(delta_t / (gap_z - delta_t), 1), and 0 when delta_t = 0.
// Throws InvariantError if gap_z < delta_t or delta_t < 0.
double optimal_p(double delta_t, double gap_z);

// ((1 - p) delta_t + p gap_z)^2 / (p info_z). Throws InvariantError for
// p <= 0 or info_z <= 0.
double tradeoff_objective(double delta_t, double gap_z, double p,
                          double info_z);

// Chooses (z, p) minimizing the trade-off with the closed-form p per
// candidate, without drawing the Bernoulli. The greedy fallback (p = 0,
// z = x_star_hat) is returned when delta_t = 0 or no candidate has
// information gain above kMinInfoGain.
IdsDecision ids_decide(const ActionPosterior& post, double beta_val);

// ids_decide followed by B ~ Bernoulli(p): plays (x_star_hat, z) if B = 1
// and the greedy pair (x_star_hat, x_star_hat) otherwise.
IdsDecision ids_select(const ActionPosterior& post, double beta_val, Rng& rng);

// Information ratio of the mixture (1-p) (x_star_hat, x_star_hat) +
// p (x_star_hat, z), counting the estimated gap of both actions in a pair:
// ((1-p) 2 delta_t + p (gap_z + delta_t))^2 / (p info_z).
// Throws InvariantError for p <= 0 or info_z <= 0.
double information_ratio(double delta_t, double gap_z, double p,
                         double info_z);

}  // namespace duelbo

#endif  // DUELBO_IDS_HPP_
