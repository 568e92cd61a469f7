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

#ifndef DUELBO_POLICIES_HPP_
#define DUELBO_POLICIES_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "duelbo/baselines.hpp"
#include "duelbo/environment.hpp"
#include "duelbo/ids.hpp"
#include "duelbo/reductions.hpp"

namespace duelbo {

// A policy consumes one or more environment steps per call to play() and
// appends the true gap of every evaluated point to `step_gaps`.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual void play(ConfoundedEnv& env, std::vector<double>& step_gaps) = 0;
};

struct IdsSettings {
  ReductionKind reduction = ReductionKind::TwoPoint(0.0);
  KernelSpec kernel = KernelSpec::Linear();
  double lambda = 1.0;
  double norm_bound = 1.0;
  double delta = 0.05;
  // Overrides the confidence coefficient with a constant when set.
  std::optional<double> beta_fixed;
};

// Per-round diagnostics, delivered before feedback is collected.
struct IdsRoundInfo {
  long round = 0;
  const ActionPosterior* posterior = nullptr;
  double beta = 0.0;
  const IdsDecision* decision = nullptr;
};

using IdsObserver = std::function<void(const IdsRoundInfo&)>;

// Approximate IDS over a reduction. When fewer environment steps remain
// than the reduction needs, the empirical maximizer is evaluated once and
// the observation discarded. Greedy pairs are evaluated (regret charged)
// but never appended.
class IdsPolicy : public Policy {
 public:
  IdsPolicy(const IdsSettings& settings, double sigma, ActionSet actions,
            Rng policy_rng, Rng coin_rng, IdsObserver observer = {});

  void play(ConfoundedEnv& env, std::vector<double>& step_gaps) override;

  const ActionPosterior& posterior() const { return post_; }
  const ConfidenceParams& confidence() const { return conf_; }
  double current_beta() const;

 private:
  IdsSettings settings_;
  ConfidenceParams conf_;
  ActionPosterior post_;
  Rng policy_rng_;
  Rng coin_rng_;
  IdsObserver observer_;
  long round_ = 0;
};

class LinUcbPolicy : public Policy {
 public:
  LinUcbPolicy(ActionSet actions, double lambda, double delta);
  void play(ConfoundedEnv& env, std::vector<double>& step_gaps) override;

 private:
  ActionSet actions_;
  RidgeState state_;
  double delta_;
};

class GpUcbPolicy : public Policy {
 public:
  GpUcbPolicy(const KernelSpec& kernel, double lambda, double beta,
              ActionSet actions);
  void play(ConfoundedEnv& env, std::vector<double>& step_gaps) override;

 private:
  GpPosterior post_;
  double beta_;
};

class SemiTsPolicy : public Policy {
 public:
  SemiTsPolicy(ActionSet actions, double lambda, double delta,
               int num_samples, std::uint64_t seed);
  void play(ConfoundedEnv& env, std::vector<double>& step_gaps) override;

 private:
  ActionSet actions_;
  DrState state_;
  double delta_;
  int num_samples_;
  std::uint64_t seed_;
  long round_ = 0;
};

class BosePolicy : public Policy {
 public:
  BosePolicy(ActionSet actions, double lambda, double delta, int iterations,
             double step, Rng rng);
  void play(ConfoundedEnv& env, std::vector<double>& step_gaps) override;

 private:
  ActionSet actions_;
  BoseState state_;
  double delta_;
  int iterations_;
  double step_;
  Rng rng_;
  long round_ = 0;
};

}  // namespace duelbo

#endif  // DUELBO_POLICIES_HPP_
