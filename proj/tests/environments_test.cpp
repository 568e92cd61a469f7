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
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "duelbo/environment.hpp"
#include "duelbo/errors.hpp"

namespace duelbo {
namespace {

// Unclipped six-hump camelback, written out independently.
double camel_inner(double x, double y) {
  return (4 - 2.1 * x * x + std::pow(x, 4) / 3) * x * x + x * y +
         (-4 + 4 * y * y) * y * y;
}

TEST_CASE("camelback values") {
  CHECK(camelback(0.0, 0.0) == 0.0);
  CHECK(camelback(2.0, 1.0) == -2.5);
  CHECK(camelback(-2.0, -1.0) == -2.5);
  CHECK(camelback(0.5, 0.3) == doctest::Approx(-camel_inner(0.5, 0.3)));
  CHECK_THROWS_AS(camelback(2.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(camelback(0.0, -1.01), std::invalid_argument);
}

TEST_CASE("camelback maximum by brute force") {
  double best = -1e9, bx = 0, by = 0;
  for (int i = 0; i <= 2000; ++i) {
    for (int j = 0; j <= 1000; ++j) {
      const double x = -2.0 + 4.0 * i / 2000.0, y = -1.0 + 2.0 * j / 1000.0;
      const double v = -std::min(camel_inner(x, y), 2.5);
      if (v > best) {
        best = v;
        bx = x;
        by = y;
      }
    }
  }
  CHECK(best == doctest::Approx(1.0316).epsilon(1e-4));
  CHECK(std::abs(std::abs(bx) - 0.0898) < 0.005);
  CHECK(std::abs(std::abs(by) - 0.7126) < 0.005);
  CHECK(bx * by < 0.0);
  CHECK(camelback(0.0898, -0.7126) == doctest::Approx(best).epsilon(1e-4));

  const Objective obj = Objective::Camelback(30);
  CHECK(obj.best_value() <= best);
  CHECK(obj.best_value() > 0.9);
  CHECK(obj.true_gap(obj.best_action()) == 0.0);
  CHECK(obj.values().minCoeff() == -2.5);
  for (Eigen::Index i = 0; i < obj.actions().size(); ++i) {
    CHECK(obj.true_gap(i) >= 0.0);
  }
}

TEST_CASE("camelback grid layout") {
  const ActionSet g = camelback_grid(30);
  REQUIRE(g.size() == 900);
  CHECK(g.points(0, 0) == -2.0);
  CHECK(g.points(0, 1) == -1.0);
  CHECK(g.points(899, 0) == 2.0);
  CHECK(g.points(899, 1) == 1.0);
  CHECK(g.points(1, 0) == -2.0);  // x1 slowest
  CHECK(g.points(30, 0) == doctest::Approx(-2.0 + 4.0 / 29));
  CHECK_THROWS(camelback_grid(1));
}

TEST_CASE("sphere actions") {
  Rng rng(1, Stream::kTest);
  const ActionSet a = sample_sphere_actions(4, 20, rng);
  CHECK(a.size() == 20);
  for (Eigen::Index i = 0; i < 20; ++i) {
    CHECK(std::abs(a.point(i).norm() - 1.0) <= 1e-12);
  }
  const ActionSet one = sample_sphere_actions(1, 50, rng);
  for (Eigen::Index i = 0; i < 50; ++i) {
    CHECK(std::abs(one.points(i, 0)) == 1.0);
  }
  const ActionSet many = sample_sphere_actions(4, 10000, rng);
  CHECK(many.points.colwise().mean().norm() <= 0.05);
  CHECK_THROWS(sample_sphere_actions(0, 3, rng));
}

TEST_CASE("linear objective gaps") {
  const Objective obj =
      Objective::Linear(Vector::Unit(2, 0), ActionSet(Matrix::Identity(2, 2)));
  CHECK(obj.true_gap(Vector::Unit(2, 1)) == 1.0);
  CHECK(obj.true_gap(obj.best_action()) == 0.0);
  CHECK(obj.best_action() == 0);
  CHECK_THROWS_AS(
      Objective::Linear(Vector::Ones(3), ActionSet(Matrix::Identity(2, 2))),
      std::invalid_argument);
}

TEST_CASE("bias schedule values") {
  const std::vector<double> none;
  CHECK(bias_value(BiasSchedule::Drift(), 5, std::vector<double>(4, 9.0)) ==
        doctest::Approx(-0.5));
  CHECK(bias_value(BiasSchedule::PeriodicDrift(), 1, none) ==
        doctest::Approx(0.09866933079506122).epsilon(1e-14));
  CHECK(bias_value(BiasSchedule::NegativeRepeat(), 1, none, none) == 0.0);
  CHECK(bias_value(BiasSchedule::None(), 3, std::vector<double>{1, 2}) == 0.0);
  CHECK(bias_value(BiasSchedule::Constant(0.7), 1, none) == 0.7);

  const std::vector<double> y{0.4, -1.5}, outcome{0.3, -0.2};
  CHECK(bias_value(BiasSchedule::NegativeRepeat(), 3, y, outcome) == 0.2);
  BiasSchedule observed = BiasSchedule::NegativeRepeat();
  observed.echo = BiasSchedule::Echo::kObserved;
  CHECK(bias_value(observed, 3, y) == 1.5);
  CHECK(bias_value(BiasSchedule::CompensatedDrift(), 3, y, outcome) ==
        doctest::Approx(-0.3 - 0.2));
  CHECK_THROWS_AS(bias_value(BiasSchedule::NegativeRepeat(), 3, y),
                  std::invalid_argument);
  CHECK_THROWS_AS(bias_value(BiasSchedule::Drift(), 0, none),
                  std::invalid_argument);
  CHECK_THROWS_AS(bias_value(BiasSchedule::Drift(), 4, y),
                  std::invalid_argument);
}

TEST_CASE("calibration offset") {
  const BiasSchedule cal = BiasSchedule::Calibration(10, 0.1);
  std::vector<double> y(9, 0.5);
  // Fewer than ten values: no adjustment.
  CHECK(bias_value(cal, 10, y) == 0.0);
  y.push_back(0.5);
  CHECK(bias_value(cal, 11, y) == doctest::Approx(-0.5));
  // The window restarts after an adjustment.
  for (int i = 0; i < 9; ++i) y.push_back(0.3);
  CHECK(bias_value(cal, 20, y) == doctest::Approx(-0.5));
  y.push_back(0.3);
  CHECK(bias_value(cal, 21, y) == doctest::Approx(-0.8));
  // In-band windows slide without adjusting.
  std::vector<double> quiet(30, 0.05);
  CHECK(bias_value(cal, 31, quiet) == 0.0);
  quiet.push_back(2.0);  // mean of last ten = (9 * 0.05 + 2) / 10
  CHECK(bias_value(cal, 32, quiet) == doctest::Approx(-0.245));
  CHECK_THROWS(BiasSchedule::Calibration(0, 0.1));
}

TEST_CASE("calibration re-centers a drifting detector") {
  const Objective obj = Objective::Camelback(30);
  ConfoundedEnv env(obj, std::sqrt(0.1), BiasSchedule::Calibration(), 400,
                    Rng(3, Stream::kNoise));
  const Vector far = obj.actions().point(0);  // f = -2.5
  for (int i = 0; i < 400; ++i) env.step(far);
  double late = 0.0;
  for (int i = 300; i < 400; ++i) late += env.log()[i].y;
  CHECK(std::abs(late / 100.0) < 0.3);
  CHECK(env.log().back().bias == doctest::Approx(2.5).epsilon(0.1));
}

TEST_CASE("environment without noise or bias") {
  const Objective obj = Objective::Camelback(30);
  ConfoundedEnv env(obj, 0.0, BiasSchedule::None(), 5, Rng(1, Stream::kNoise));
  for (int i = 0; i < 5; ++i) {
    CHECK(env.step(obj.actions().point(i * 7)) == obj.value(i * 7));
  }
  CHECK(env.remaining() == 0);
  CHECK_THROWS_AS(env.step(obj.actions().point(0)), HorizonError);
  CHECK(env.step_count() == 5);
}

ConfoundedEnv run_env(const BiasSchedule& bias, std::uint64_t seed, long n,
                      int shift = 0) {
  Rng rng(1, Stream::kInstance);
  const ActionSet acts = sample_sphere_actions(4, 20, rng);
  ConfoundedEnv env(Objective::Linear(Vector::Unit(4, 0), acts), 1.0, bias, n,
                    Rng(seed, Stream::kNoise));
  for (long t = 0; t < n; ++t) {
    env.step(acts.point((t * 7 + (t == n - 1 ? shift : 0)) % 20));
  }
  return env;
}

TEST_CASE("environment logs reconstruct observations") {
  for (auto kind :
       {BiasSchedule::Kind::kNone, BiasSchedule::Kind::kNegativeRepeat,
        BiasSchedule::Kind::kDrift, BiasSchedule::Kind::kCompensatedDrift,
        BiasSchedule::Kind::kCalibration, BiasSchedule::Kind::kPeriodicDrift}) {
    BiasSchedule s;
    s.kind = kind;
    const ConfoundedEnv env = run_env(s, 4, 200);
    for (long t = 0; t < 200; ++t) {
      const StepRecord& r = env.log()[t];
      CHECK(r.t == t + 1);
      CHECK(r.y == r.f + r.bias + r.noise);
      CHECK(r.bias == bias_value(s, r.t, env.y_history(),
                                 env.outcome_history()));
    }
  }
}

TEST_CASE("bias never depends on the current action") {
  for (auto kind :
       {BiasSchedule::Kind::kNegativeRepeat, BiasSchedule::Kind::kCalibration,
        BiasSchedule::Kind::kCompensatedDrift}) {
    BiasSchedule s;
    s.kind = kind;
    const ConfoundedEnv a = run_env(s, 5, 100, 0);
    const ConfoundedEnv b = run_env(s, 5, 100, 3);
    CHECK(a.log().back().x != b.log().back().x);
    CHECK(a.log().back().bias == b.log().back().bias);
  }
}

TEST_CASE("same seed gives identical logs") {
  const ConfoundedEnv a = run_env(BiasSchedule::Calibration(), 6, 300);
  const ConfoundedEnv b = run_env(BiasSchedule::Calibration(), 6, 300);
  const ConfoundedEnv c = run_env(BiasSchedule::Calibration(), 7, 300);
  CHECK(a.y_history() == b.y_history());
  CHECK(a.y_history() != c.y_history());
}

TEST_CASE("bias increments and bounds") {
  const ConfoundedEnv drift = run_env(BiasSchedule::Drift(0.1), 8, 500);
  const ConfoundedEnv periodic = run_env(BiasSchedule::PeriodicDrift(), 8, 500);
  for (std::size_t t = 1; t < 500; ++t) {
    CHECK(std::abs(drift.log()[t].bias - drift.log()[t - 1].bias) <=
          0.1 + 1e-12);
    CHECK(std::abs(periodic.log()[t].bias - periodic.log()[t - 1].bias) <=
          0.1 + 2 * std::sin(0.1) + 1e-12);
  }
  // Echoed outcomes stay bounded; |f| <= 1 and the noise is Gaussian.
  for (auto kind :
       {BiasSchedule::Kind::kNegativeRepeat, BiasSchedule::Kind::kCalibration}) {
    BiasSchedule s;
    s.kind = kind;
    const ConfoundedEnv env = run_env(s, 9, 2000);
    double c_max = 0.0;
    for (const auto& r : env.log()) c_max = std::max(c_max, std::abs(r.bias));
    MESSAGE(to_string(kind) << " empirical C_max " << c_max);
    CHECK(c_max < 7.0);
  }
}

TEST_CASE("debug csv") {
  const ConfoundedEnv env = run_env(BiasSchedule::Drift(), 10, 25);
  const std::string path = "environments_debug.csv";
  env.write_debug_csv(path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,x,f_x,b_t,eps_t,y_t");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 25);
  std::remove(path.c_str());
  CHECK_THROWS(env.write_debug_csv("/nonexistent-dir/x.csv"));
}

TEST_CASE("schedule names") {
  CHECK(bias_kind_from_string("periodic_drift") ==
        BiasSchedule::Kind::kPeriodicDrift);
  CHECK(to_string(BiasSchedule::Kind::kCompensatedDrift) ==
        "compensated_drift");
  CHECK_THROWS(bias_kind_from_string("wobble"));
  CHECK(bias_echo_from_string("observed") == BiasSchedule::Echo::kObserved);
  CHECK_THROWS(bias_echo_from_string("y"));
}

}  // namespace
}  // namespace duelbo
