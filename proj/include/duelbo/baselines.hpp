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

#ifndef DUELBO_BASELINES_HPP_
#define DUELBO_BASELINES_HPP_

#include <utility>
#include <vector>

#include "duelbo/action_posterior.hpp"
#include "duelbo/cholesky.hpp"
#include "duelbo/random.hpp"

namespace duelbo {

// ---------------------------------------------------------------------------
// LinUCB on raw observations.

// Regularized design V = sum x x^T + lambda I, b = sum x y, theta = V^-1 b.
struct RidgeState {
  Matrix V;
  Vector b_vec;
  Vector theta_hat;

  explicit RidgeState(Eigen::Index dim, double lambda = 1.0);
  void update(const Vector& x, double y);
};

// sqrt(log det V + 2 log(1/delta)) + 1.
double linucb_beta_root(const RidgeState& state, double delta);

// argmax <x, theta> + beta^{1/2} |x|_{V^-1}; ties to the lowest index.
Eigen::Index linucb_select(const RidgeState& state, const ActionSet& actions,
                           double delta);

// ---------------------------------------------------------------------------
// GP-UCB on raw observations.

// Standard GP regression over a fixed action set with noise variance
// lambda; observations are raw (confounded) values at action indices.
class GpPosterior {
 public:
  GpPosterior(const KernelSpec& kernel, double lambda, ActionSet actions);

  void observe(Eigen::Index action, double y);

  const ActionSet& actions() const { return actions_; }
  std::size_t num_observations() const { return observed_.size(); }
  const Vector& means() const { return means_; }
  // Posterior variances, clamped at zero.
  Vector variances() const;
  const Vector& prior_variances() const { return prior_var_; }

 private:
  double lambda_;
  ActionSet actions_;
  Matrix gram_;
  Vector prior_var_;
  IncrementalCholesky factor_;
  std::vector<Eigen::Index> observed_;
  Vector whitened_y_;
  Matrix white_;  // |X| x capacity
  Vector white_sq_;
  Vector means_;
};

// argmax mu(x) + sqrt(beta) sigma(x); ties to the lowest index.
Eigen::Index gpucb_select(const GpPosterior& post, double beta = 1.0);

// ---------------------------------------------------------------------------
// Doubly-robust (centered-feature) least squares.

// Gamma = sum c c^T + lambda I and moment = sum c y, with centered features
// c = x_played - E_mu[x]; theta_dr = Gamma^-1 moment.
struct DrState {
  Matrix Gamma;
  Vector moment;
  Vector theta_dr;

  explicit DrState(Eigen::Index dim, double lambda = 1.0);
};

using SupportPoint = std::pair<Vector, double>;

// Rank-one update with the centered feature of the played action.
// Throws std::invalid_argument if probabilities are negative, do not sum
// to one (1e-9), dimensions disagree, or x_played is not in the support.
DrState dr_update(DrState state, const std::vector<SupportPoint>& mu_support,
                  const Vector& x_played, double y);

// ---------------------------------------------------------------------------
// Semi-parametric Thompson sampling.

// SemiTS variant of the centered update: besides the played feature c it
// adds the policy covariance sum_i mu_i (x_i - xbar)(x_i - xbar)^T to Gamma,
// and accumulates 2 c y in the moment. Same argument checks as dr_update.
DrState semits_update(DrState state,
                      const std::vector<SupportPoint>& mu_support,
                      const Vector& x_played, double y);

struct SemiTsChoice {
  Eigen::Index index = 0;
  Vector probabilities;  // empirical optimality frequencies over actions
};

// Oversampling scale sqrt(2 log(t / delta)).
double semits_scale(long t, double delta);

// Draws `num_samples` parameters theta + v L^-T eta (Gamma = L L^T,
// eta ~ N(0, I)); the played action is the argmax under the first draw and
// the probabilities are the argmax frequencies over all draws, so the played
// action always has positive probability.
SemiTsChoice semits_select(const DrState& state, const ActionSet& actions,
                           long t, double delta, Rng& rng,
                           int num_samples = 1000);

// ---------------------------------------------------------------------------
// BOSE with a min-max design.

// sqrt(d log(1 + t/d) + 2 log(t/delta)) + 1.
double bose_beta(Eigen::Index dim, long t, double delta);

// max_i (x_i - xbar_mu)^T Gamma_inv (x_i - xbar_mu) over the rows of points.
double bose_design_objective(const Vector& mu, const Matrix& points,
                             const Matrix& gamma_inv);

struct BoseDesign {
  Vector mu;
  double objective = 0.0;
};

// Exponentiated-gradient minimization of bose_design_objective over the
// simplex. Steps use the subgradient scaled to unit max-norm; the best
// iterate (or the iterate average, if better) is returned.
BoseDesign bose_design(const Matrix& points, const Matrix& gamma_inv,
                       int iterations = 200, double step = 0.1);

struct BoseChoice {
  Eigen::Index index = 0;
  Vector probabilities;  // over the full action set, zero off the survivors
  std::vector<Eigen::Index> survivors;
};

// Surviving actions are persistent across rounds.
struct BoseState {
  DrState dr;
  std::vector<Eigen::Index> survivors;

  BoseState(const ActionSet& actions, double lambda = 1.0);
};

// Eliminates survivors x with max_z <z - x, theta_dr> >
// 2 beta |z - x|_{Gamma^-1}, designs mu over the rest and samples from it.
// An empty survivor set falls back to all actions with a warning on stderr.
BoseChoice bose_select(BoseState& state, const ActionSet& actions, long t,
                       double delta, Rng& rng, int iterations = 200,
                       double step = 0.1);

}  // namespace duelbo

#endif  // DUELBO_BASELINES_HPP_
