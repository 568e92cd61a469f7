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

#include "duelbo/ids.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "duelbo/errors.hpp"

namespace duelbo {

Eigen::Index estimate_argmax(const ActionPosterior& post) {
  const Vector& means = post.means();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < means.size(); ++i) {
    if (means(i) > means(best)) best = i;
  }
  return best;
}

namespace {

double delta_from(const ActionPosterior& post, Eigen::Index anchor,
                  double beta_val) {
  const Vector psi = post.psi_from(anchor);
  const Vector& means = post.means();
  const double root_beta = std::sqrt(beta_val);
  double best = 0.0;  // z = anchor contributes exactly zero
  for (Eigen::Index z = 0; z < means.size(); ++z) {
    const double v = means(z) - means(anchor) + root_beta * std::sqrt(psi(z));
    if (v > best) best = v;
  }
  return best;
}

void check_beta(double beta_val) {
  if (!(beta_val >= 0.0)) {
    throw std::invalid_argument("confidence coefficient must be nonnegative");
  }
}

}  // namespace

double compute_delta_t(const ActionPosterior& post, double beta_val) {
  check_beta(beta_val);
  return delta_from(post, estimate_argmax(post), beta_val);
}

GapState gap_estimates(const ActionPosterior& post, double beta_val) {
  check_beta(beta_val);
  GapState state;
  state.x_star_hat = estimate_argmax(post);
  state.delta_t = delta_from(post, state.x_star_hat, beta_val);
  const double top = post.mean(state.x_star_hat);
  state.gaps = (state.delta_t + (top - post.means().array())).matrix();
  return state;
}

double optimal_p(double delta_t, double gap_z) {
  if (delta_t < 0.0 || gap_z < delta_t) {
    throw InvariantError("optimal_p requires gap_z >= delta_t >= 0");
  }
  if (delta_t == 0.0) return 0.0;
  const double excess = gap_z - delta_t;
  if (excess <= delta_t) return 1.0;
  return delta_t / excess;
}

double tradeoff_objective(double delta_t, double gap_z, double p,
                          double info_z) {
  if (!(p > 0.0) || !(info_z > 0.0)) {
    throw InvariantError("trade-off undefined for p = 0 or zero information");
  }
  const double expected = (1.0 - p) * delta_t + p * gap_z;
  return expected * expected / (p * info_z);
}

IdsDecision ids_decide(const ActionPosterior& post, double beta_val) {
  const GapState gs = gap_estimates(post, beta_val);
  IdsDecision decision;
  decision.x_star_hat = gs.x_star_hat;
  decision.z = gs.x_star_hat;
  decision.pair_played = {gs.x_star_hat, gs.x_star_hat};
  decision.delta_t = gs.delta_t;
  if (gs.delta_t <= 0.0) return decision;

  const Vector info = post.info_gain_from(gs.x_star_hat);
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index z = 0; z < info.size(); ++z) {
    if (!(info(z) > kMinInfoGain)) continue;
    const double p = optimal_p(gs.delta_t, gs.gaps(z));
    const double value = tradeoff_objective(gs.delta_t, gs.gaps(z), p, info(z));
    if (value < best) {
      best = value;
      decision.z = z;
      decision.p = p;
      decision.gap_z = gs.gaps(z);
      decision.info_z = info(z);
      decision.objective = value;
    }
  }
  return decision;
}

IdsDecision ids_select(const ActionPosterior& post, double beta_val,
                       Rng& rng) {
  IdsDecision decision = ids_decide(post, beta_val);
  if (decision.p > 0.0 && rng.bernoulli(decision.p)) {
    decision.informative = true;
    decision.pair_played = {decision.x_star_hat, decision.z};
  }
  return decision;
}

double information_ratio(double delta_t, double gap_z, double p,
                         double info_z) {
  if (!(p > 0.0) || !(info_z > 0.0)) {
    throw InvariantError(
        "information ratio undefined for p = 0 or zero information");
  }
  const double expected = (1.0 - p) * 2.0 * delta_t + p * (gap_z + delta_t);
  return expected * expected / (p * info_z);
}

}  // namespace duelbo
