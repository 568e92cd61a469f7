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

#include <cmath>
#include <limits>

#include "doctest.h"
#include "duelbo/errors.hpp"
#include "duelbo/ids.hpp"
#include "duelbo/policies.hpp"
#include "oracles.hpp"

namespace duelbo {
namespace {

ActionSet two_axes() { return ActionSet(Matrix::Identity(2, 2)); }

ActionPosterior random_posterior(Rng& rng, int m, int n) {
  Matrix pts(m, 2);
  for (int i = 0; i < m; ++i) {
    pts.row(i) = testing::uniform_point(2, rng).transpose();
  }
  ActionPosterior post(KernelSpec::Rbf(0.25), 1.0, ActionSet(pts));
  for (int s = 0; s < n; ++s) {
    post.append(static_cast<Eigen::Index>(rng.uniform_index(m)),
                static_cast<Eigen::Index>(rng.uniform_index(m)),
                2.0 * rng.normal());
  }
  return post;
}

TEST_CASE("estimate argmax") {
  ActionPosterior post(KernelSpec::Linear(), 1.0, two_axes());
  CHECK(estimate_argmax(post) == 0);
  ActionPosterior flipped(KernelSpec::Linear(), 1.0, two_axes());
  flipped.append(1, 0, 1.0);
  CHECK(estimate_argmax(flipped) == 1);
  post.append(0, 1, 1.0);
  CHECK(post.mean(0) == doctest::Approx(1.0 / 3.0));
  CHECK(post.mean(1) == doctest::Approx(-1.0 / 3.0));
  CHECK(estimate_argmax(post) == 0);
}

TEST_CASE("compute_delta_t examples") {
  ActionPosterior single(KernelSpec::Rbf(0.2), 1.0,
                         ActionSet(Matrix::Zero(1, 2)));
  CHECK(compute_delta_t(single, 3.0) == 0.0);
  ActionPosterior post(KernelSpec::Linear(), 1.0, two_axes());
  CHECK(compute_delta_t(post, 1.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  Rng rng(21, Stream::kTest);
  const ActionPosterior rp = random_posterior(rng, 10, 8);
  CHECK(compute_delta_t(rp, 0.0) == 0.0);
  CHECK_THROWS_AS(compute_delta_t(rp, -1.0), std::invalid_argument);
}

TEST_CASE("gap estimate invariants") {
  for (int run = 0; run < 30; ++run) {
    Rng rng(500 + run, Stream::kTest);
    const ActionPosterior post = random_posterior(rng, 12, run);
    const double b = 0.5 + 3.0 * rng.uniform();
    const GapState g = gap_estimates(post, b);
    CHECK(g.gaps(g.x_star_hat) == doctest::Approx(g.delta_t));
    CHECK(g.delta_t >= 0.0);
    const Vector psi = post.psi_from(g.x_star_hat);
    for (Eigen::Index x = 0; x < 12; ++x) {
      CHECK(g.gaps(x) >= g.delta_t - 1e-12);
      CHECK(g.gaps(x) >= std::sqrt(b * psi(x)) - 1e-12);
    }
  }
}

TEST_CASE("optimal_p examples") {
  CHECK(optimal_p(1.0, 3.0) == 0.5);
  CHECK(optimal_p(0.0, 2.0) == 0.0);
  CHECK(optimal_p(1.0, 1.5) == 1.0);
  CHECK(optimal_p(1.0, 1.0) == 1.0);
  CHECK_THROWS_AS(optimal_p(1.0, 0.5), InvariantError);
  CHECK_THROWS_AS(optimal_p(-0.1, 1.0), InvariantError);
}

TEST_CASE("optimal_p minimizes the trade-off") {
  Rng rng(22, Stream::kTest);
  for (int i = 0; i < 200; ++i) {
    const double d = 0.01 + rng.uniform();
    const double g = d + 3.0 * rng.uniform();
    const double info = 0.01 + rng.uniform();
    const double p = optimal_p(d, g);
    const double best = tradeoff_objective(d, g, p, info);
    for (int k = 1; k <= 1000; ++k) {
      CHECK(best <= tradeoff_objective(d, g, k / 1000.0, info) * (1 + 1e-12));
    }
  }
}

TEST_CASE("ids_decide beats every grid point") {
  for (int state = 0; state < 40; ++state) {
    Rng rng(600 + state, Stream::kTest);
    const ActionPosterior post = random_posterior(rng, 8, 1 + state % 15);
    const double b = 0.3 + 2.0 * rng.uniform();
    const IdsDecision dec = ids_decide(post, b);
    const GapState g = gap_estimates(post, b);
    if (g.delta_t <= 0.0) continue;
    const Vector info = post.info_gain_from(g.x_star_hat);
    for (Eigen::Index z = 0; z < 8; ++z) {
      if (info(z) <= kMinInfoGain) continue;
      for (int k = 1; k <= 100; ++k) {
        CHECK(dec.objective <=
              tradeoff_objective(g.delta_t, g.gaps(z), k / 100.0, info(z)) *
                  (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("ids_select pair semantics") {
  ActionPosterior single(KernelSpec::Rbf(0.2), 1.0,
                         ActionSet(Matrix::Zero(1, 2)));
  Rng rng(23, Stream::kTest);
  const IdsDecision g = ids_select(single, 1.0, rng);
  CHECK(g.p == 0.0);
  CHECK(g.greedy_fallback());
  CHECK_FALSE(g.informative);
  CHECK(g.pair_played == std::pair<Eigen::Index, Eigen::Index>{0, 0});

  int informative = 0;
  for (int i = 0; i < 200; ++i) {
    Rng r(700 + i, Stream::kTest);
    const ActionPosterior post = random_posterior(r, 6, 3);
    const IdsDecision d = ids_select(post, 2.0, r);
    if (d.informative) {
      ++informative;
      CHECK(d.pair_played.first == d.x_star_hat);
      CHECK(d.pair_played.second == d.z);
    } else {
      CHECK(d.pair_played.first == d.x_star_hat);
      CHECK(d.pair_played.second == d.x_star_hat);
    }
  }
  CHECK(informative > 0);

  // Same state and seed, same decision.
  Rng a(31, Stream::kTest), b(31, Stream::kTest);
  Rng s1(32, Stream::kTest), s2(32, Stream::kTest);
  const IdsDecision da = ids_select(random_posterior(s1, 6, 4), 1.0, a);
  const IdsDecision db = ids_select(random_posterior(s2, 6, 4), 1.0, b);
  CHECK(da.z == db.z);
  CHECK(da.p == db.p);
  CHECK(da.informative == db.informative);
}

TEST_CASE("information ratio") {
  CHECK(information_ratio(0.0, 2.0, 1.0, 0.5) == doctest::Approx(8.0));
  // ((1 - 0.5) * 2 * 1 + 0.5 * (3 + 1))^2 / (0.5 * 1) = 9 / 0.5.
  CHECK(information_ratio(1.0, 3.0, 0.5, 1.0) == doctest::Approx(18.0));
  CHECK_THROWS_AS(information_ratio(1.0, 3.0, 0.0, 1.0), InvariantError);
  CHECK_THROWS_AS(information_ratio(1.0, 3.0, 0.5, 0.0), InvariantError);
  CHECK_THROWS_AS(tradeoff_objective(1.0, 3.0, 0.0, 1.0), InvariantError);
}

TEST_CASE("a <= 3 log(1 + a) on [0, 4]") {
  for (int i = 0; i <= 4000; ++i) {
    const double a = i / 1000.0;
    CHECK(a <= 3.0 * std::log1p(a) + 1e-15);
  }
}

Objective axis_objective() {
  return Objective::Linear((Vector(2) << 1.0, 0.0).finished(), two_axes());
}

TEST_CASE("two-point IDS policy charges every evaluation") {
  IdsSettings s;
  s.reduction = ReductionKind::TwoPoint(0.0);
  ConfoundedEnv env(axis_objective(), 0.5, BiasSchedule::None(), 7,
                    Rng(1, Stream::kNoise));
  IdsPolicy policy(s, 0.5, two_axes(), Rng(1, Stream::kPolicy),
                   Rng(1, Stream::kCoin));
  std::vector<double> gaps;
  while (env.remaining() > 0) policy.play(env, gaps);
  CHECK(gaps.size() == 7);
  CHECK(env.step_count() == 7);
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    CHECK(gaps[i] == env.true_gap(env.log()[i].x));
  }
  // Three rounds of two steps, then a lone evaluation of the estimate.
  CHECK(policy.posterior().num_observations() <= 3);
  CHECK(env.log()[6].x ==
        two_axes().point(estimate_argmax(policy.posterior())));
}

TEST_CASE("greedy rounds query the environment but add no data") {
  IdsSettings s;
  s.reduction = ReductionKind::OnePoint(0.0);
  s.beta_fixed = 0.0;  // delta_t = 0, always greedy
  ConfoundedEnv env(axis_objective(), 1.0, BiasSchedule::None(), 10,
                    Rng(2, Stream::kNoise));
  long rounds = 0;
  IdsPolicy policy(s, 1.0, two_axes(), Rng(2, Stream::kPolicy),
                   Rng(2, Stream::kCoin),
                   [&](const IdsRoundInfo& info) {
                     ++rounds;
                     CHECK(info.decision->greedy_fallback());
                   });
  std::vector<double> gaps;
  while (env.remaining() > 0) policy.play(env, gaps);
  CHECK(rounds == 10);
  CHECK(env.step_count() == 10);
  CHECK(policy.posterior().num_observations() == 0);
  CHECK(gaps == std::vector<double>(10, 0.0));
}

}  // namespace
}  // namespace duelbo
