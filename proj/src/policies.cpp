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

#include "duelbo/policies.hpp"

namespace duelbo {

// -- IDS ---------------------------------------------------------------------

IdsPolicy::IdsPolicy(const IdsSettings& settings, double sigma,
                     ActionSet actions, Rng policy_rng, Rng coin_rng,
                     IdsObserver observer)
    : settings_(settings),
      post_(settings.kernel, settings.lambda, std::move(actions)),
      policy_rng_(std::move(policy_rng)),
      coin_rng_(std::move(coin_rng)),
      observer_(std::move(observer)) {
  conf_.rho = effective_rho(settings.reduction, sigma);
  conf_.norm_bound = settings.norm_bound;
  conf_.delta = settings.delta;
  if (!settings.beta_fixed) conf_.validate();
}

double IdsPolicy::current_beta() const {
  return settings_.beta_fixed ? *settings_.beta_fixed : post_.beta(conf_);
}

void IdsPolicy::play(ConfoundedEnv& env, std::vector<double>& step_gaps) {
  const ActionSet& actions = post_.actions();
  if (env.remaining() < settings_.reduction.env_steps()) {
    const Vector x = actions.point(estimate_argmax(post_));
    env.step(x);
    step_gaps.push_back(env.true_gap(x));
    return;
  }
  ++round_;
  const double beta_val = current_beta();
  const IdsDecision decision = ids_select(post_, beta_val, policy_rng_);
  if (observer_) observer_({round_, &post_, beta_val, &decision});

  const auto [first, second] = decision.pair_played;
  const DuelOutcome outcome = duel(settings_.reduction, env,
                                   actions.point(first), actions.point(second),
                                   coin_rng_);
  for (const auto& evaluated : outcome.evaluated_points) {
    step_gaps.push_back(evaluated.gap);
  }
  if (decision.informative) post_.append(first, second, outcome.d);
}

// -- LinUCB ------------------------------------------------------------------

LinUcbPolicy::LinUcbPolicy(ActionSet actions, double lambda, double delta)
    : actions_(std::move(actions)),
      state_(actions_.dim(), lambda),
      delta_(delta) {}

void LinUcbPolicy::play(ConfoundedEnv& env, std::vector<double>& step_gaps) {
  const Vector x = actions_.point(linucb_select(state_, actions_, delta_));
  const double y = env.step(x);
  step_gaps.push_back(env.true_gap(x));
  state_.update(x, y);
}

// -- GP-UCB ------------------------------------------------------------------

GpUcbPolicy::GpUcbPolicy(const KernelSpec& kernel, double lambda, double beta,
                         ActionSet actions)
    : post_(kernel, lambda, std::move(actions)), beta_(beta) {}

void GpUcbPolicy::play(ConfoundedEnv& env, std::vector<double>& step_gaps) {
  const Eigen::Index i = gpucb_select(post_, beta_);
  const Vector x = post_.actions().point(i);
  const double y = env.step(x);
  step_gaps.push_back(env.true_gap(x));
  post_.observe(i, y);
}

// -- SemiTS ------------------------------------------------------------------

SemiTsPolicy::SemiTsPolicy(ActionSet actions, double lambda, double delta,
                           int num_samples, std::uint64_t seed)
    : actions_(std::move(actions)),
      state_(actions_.dim(), lambda),
      delta_(delta),
      num_samples_(num_samples),
      seed_(seed) {}

void SemiTsPolicy::play(ConfoundedEnv& env, std::vector<double>& step_gaps) {
  ++round_;
  Rng round_rng(seed_, Stream::kPolicyRound, static_cast<std::uint64_t>(round_));
  const SemiTsChoice choice =
      semits_select(state_, actions_, round_, delta_, round_rng, num_samples_);
  const Vector x = actions_.point(choice.index);
  const double y = env.step(x);
  step_gaps.push_back(env.true_gap(x));

  std::vector<SupportPoint> support;
  for (Eigen::Index i = 0; i < actions_.size(); ++i) {
    if (choice.probabilities(i) > 0.0) {
      support.emplace_back(actions_.point(i), choice.probabilities(i));
    }
  }
  state_ = semits_update(std::move(state_), support, x, y);
}

// -- BOSE --------------------------------------------------------------------

BosePolicy::BosePolicy(ActionSet actions, double lambda, double delta,
                       int iterations, double step, Rng rng)
    : actions_(std::move(actions)),
      state_(actions_, lambda),
      delta_(delta),
      iterations_(iterations),
      step_(step),
      rng_(std::move(rng)) {}

void BosePolicy::play(ConfoundedEnv& env, std::vector<double>& step_gaps) {
  ++round_;
  const BoseChoice choice =
      bose_select(state_, actions_, round_, delta_, rng_, iterations_, step_);
  const Vector x = actions_.point(choice.index);
  const double y = env.step(x);
  step_gaps.push_back(env.true_gap(x));

  std::vector<SupportPoint> support;
  for (Eigen::Index i : choice.survivors) {
    if (choice.probabilities(i) > 0.0) {
      support.emplace_back(actions_.point(i), choice.probabilities(i));
    }
  }
  state_.dr = dr_update(std::move(state_.dr), support, x, y);
}

}  // namespace duelbo
