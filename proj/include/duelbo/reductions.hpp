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

#ifndef DUELBO_REDUCTIONS_HPP_
#define DUELBO_REDUCTIONS_HPP_

#include <vector>

#include "duelbo/environment.hpp"

namespace duelbo {

// Which randomized scheme turns confounded evaluations into difference
// feedback, and the bias bound it relies on.
struct ReductionKind {
  enum class Kind { kOnePoint, kTwoPoint };

  Kind kind = Kind::kTwoPoint;
  double c_max = 0.0;  // bound on |b_t| (one-point)
  double d_max = 0.0;  // bound on |b_t - b_{t-1}| (two-point)

  static ReductionKind OnePoint(double c_max) {
    return {Kind::kOnePoint, c_max, 0.0};
  }
  static ReductionKind TwoPoint(double d_max) {
    return {Kind::kTwoPoint, 0.0, d_max};
  }
  int env_steps() const { return kind == Kind::kOnePoint ? 1 : 2; }
};

struct EvaluatedPoint {
  Vector x;
  double gap = 0.0;  // true suboptimality, charged as regret
};

struct DuelOutcome {
  double d = 0.0;
  int env_steps_consumed = 0;
  std::vector<EvaluatedPoint> evaluated_points;
};

// Evaluates x1 and x2 in coin-randomized order on two consecutive steps and
// returns y(x1) - y(x2). Throws HorizonError, before any evaluation, if
// fewer than two steps remain.
DuelOutcome two_point_duel(ConfoundedEnv& env, const Vector& x1,
                           const Vector& x2, Rng& rng);

// Draws i ~ Bernoulli(1/2), evaluates x1 (i = 0) or x2 (i = 1) once and
// returns (-1)^i 2 y. Throws HorizonError if the environment is exhausted.
DuelOutcome one_point_duel(ConfoundedEnv& env, const Vector& x1,
                           const Vector& x2, Rng& rng);

DuelOutcome duel(const ReductionKind& kind, ConfoundedEnv& env,
                 const Vector& x1, const Vector& x2, Rng& rng);

// Sub-Gaussian scale of d - E[d]: 2 sqrt(C^2 + sigma^2) for one-point,
// sqrt(D^2 + 2 sigma^2) for two-point. Throws std::invalid_argument for
// negative sigma or a negative/non-finite relevant bound.
double effective_rho(const ReductionKind& kind, double sigma);

}  // namespace duelbo

#endif  // DUELBO_REDUCTIONS_HPP_
