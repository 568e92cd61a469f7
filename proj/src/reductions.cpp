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

#include "duelbo/reductions.hpp"

#include <cmath>
#include <stdexcept>

#include "duelbo/errors.hpp"

namespace duelbo {

DuelOutcome two_point_duel(ConfoundedEnv& env, const Vector& x1,
                           const Vector& x2, Rng& rng) {
  if (env.remaining() < 2) {
    throw HorizonError("two-point duel needs two remaining steps");
  }
  const bool swapped = rng.bernoulli(0.5);
  const Vector& first = swapped ? x2 : x1;
  const Vector& second = swapped ? x1 : x2;
  const double y_first = env.step(first);
  const double y_second = env.step(second);
  const double y1 = swapped ? y_second : y_first;
  const double y2 = swapped ? y_first : y_second;

  DuelOutcome out;
  out.d = y1 - y2;
  out.env_steps_consumed = 2;
  out.evaluated_points.push_back({first, env.true_gap(first)});
  out.evaluated_points.push_back({second, env.true_gap(second)});
  return out;
}

DuelOutcome one_point_duel(ConfoundedEnv& env, const Vector& x1,
                           const Vector& x2, Rng& rng) {
  if (env.remaining() < 1) {
    throw HorizonError("one-point duel needs a remaining step");
  }
  const bool second = rng.bernoulli(0.5);
  const Vector& x = second ? x2 : x1;
  const double y = env.step(x);

  DuelOutcome out;
  out.d = second ? -2.0 * y : 2.0 * y;
  out.env_steps_consumed = 1;
  out.evaluated_points.push_back({x, env.true_gap(x)});
  return out;
}

DuelOutcome duel(const ReductionKind& kind, ConfoundedEnv& env,
                 const Vector& x1, const Vector& x2, Rng& rng) {
  return kind.kind == ReductionKind::Kind::kOnePoint
             ? one_point_duel(env, x1, x2, rng)
             : two_point_duel(env, x1, x2, rng);
}

double effective_rho(const ReductionKind& kind, double sigma) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  if (kind.kind == ReductionKind::Kind::kOnePoint) {
    if (!(kind.c_max >= 0.0) || !std::isfinite(kind.c_max)) {
      throw std::invalid_argument("one-point reduction needs finite c_max");
    }
    return 2.0 * std::sqrt(kind.c_max * kind.c_max + sigma * sigma);
  }
  if (!(kind.d_max >= 0.0) || !std::isfinite(kind.d_max)) {
    throw std::invalid_argument("two-point reduction needs finite d_max");
  }
  return std::sqrt(kind.d_max * kind.d_max + 2.0 * sigma * sigma);
}

}  // namespace duelbo
