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
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "duelbo/errors.hpp"
#include "duelbo/harness.hpp"

namespace duelbo {
namespace {

ExperimentConfig small_linear(PolicyKind kind, long horizon = 100) {
  ExperimentConfig c;
  c.environment.horizon = horizon;
  c.policy.kind = kind;
  c.policy.c_max = 0.0;
  c.policy.d_max = 0.0;
  c.repetitions = 4;
  return c;
}

TEST_CASE("policy names") {
  for (auto kind : {PolicyKind::kIdsOne, PolicyKind::kIdsTwo,
                    PolicyKind::kLinUcb, PolicyKind::kGpUcb,
                    PolicyKind::kSemiTs, PolicyKind::kBose}) {
    CHECK(policy_kind_from_string(to_string(kind)) == kind);
  }
  CHECK(policy_kind_from_string("ids_two") == PolicyKind::kIdsTwo);
  CHECK(policy_kind_from_string("gpucb") == PolicyKind::kGpUcb);
  CHECK_THROWS_AS(policy_kind_from_string("eps-greedy"), ConfigError);
}

TEST_CASE("config validation") {
  ExperimentConfig c = small_linear(PolicyKind::kIdsOne);
  c.policy.c_max.reset();
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_linear(PolicyKind::kIdsTwo);
  c.policy.d_max.reset();
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_linear(PolicyKind::kLinUcb);
  c.environment.objective = Objective::Kind::kCamelback;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_linear(PolicyKind::kIdsTwo);
  c.environment.objective = Objective::Kind::kCamelback;
  CHECK_THROWS_AS(c.validate(), ConfigError);  // linear kernel
  c.policy.kernel = KernelSpec::Rbf(0.2);
  CHECK_NOTHROW(c.validate());
  c = small_linear(PolicyKind::kIdsOne);
  c.environment.sigma = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.policy.beta_fixed = 1.0;
  CHECK_NOTHROW(c.validate());
  c = small_linear(PolicyKind::kLinUcb);
  c.repetitions = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_linear(PolicyKind::kLinUcb);
  c.policy.delta = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  // Rejected before any environment step.
  CHECK_THROWS_AS(run_single(c, 1), ConfigError);
}

TEST_CASE("run_single edge cases") {
  ExperimentConfig c = small_linear(PolicyKind::kIdsTwo, 0);
  const RegretTrace empty = run_single(c, 1);
  CHECK(empty.cumulative.empty());
  CHECK(empty.policy == "IDS-two");

  for (auto kind : {PolicyKind::kIdsOne, PolicyKind::kIdsTwo,
                    PolicyKind::kLinUcb, PolicyKind::kGpUcb,
                    PolicyKind::kSemiTs, PolicyKind::kBose}) {
    ExperimentConfig s = small_linear(kind, 31);
    s.environment.num_actions = 1;
    s.environment.sigma = 0.0;
    s.policy.c_max = 0.5;
    s.policy.d_max = 0.5;
    if (kind == PolicyKind::kGpUcb) s.policy.kernel = KernelSpec::Rbf(0.2);
    const RegretTrace t = run_single(s, 3);
    CHECK(t.cumulative == std::vector<double>(31, 0.0));
  }
}

TEST_CASE("traces are deterministic, monotone and full length") {
  for (auto kind : {PolicyKind::kIdsOne, PolicyKind::kIdsTwo,
                    PolicyKind::kLinUcb, PolicyKind::kSemiTs,
                    PolicyKind::kBose}) {
    ExperimentConfig c = small_linear(kind, 61);
    c.environment.bias = BiasSchedule::Drift();
    const RegretTrace a = run_single(c, 5);
    const RegretTrace b = run_single(c, 5);
    CHECK(a.cumulative == b.cumulative);
    REQUIRE(a.cumulative.size() == 61);
    for (std::size_t i = 1; i < a.cumulative.size(); ++i) {
      CHECK(a.cumulative[i] >= a.cumulative[i - 1]);
    }
    const Objective obj = make_objective(c.environment, 5);
    CHECK(a.cumulative[0] >= 0.0);
    CHECK(a.cumulative[0] <= obj.best_value() - obj.values().minCoeff());
  }
}

TEST_CASE("debug log written by run_single") {
  ExperimentConfig c = small_linear(PolicyKind::kIdsTwo, 20);
  RunOptions opts;
  opts.debug_log = "harness_debug.csv";
  run_single(c, 2, opts);
  std::ifstream in(opts.debug_log);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,x,f_x,b_t,eps_t,y_t");
  std::remove(opts.debug_log.c_str());
}

RegretTrace trace(std::vector<double> v, const char* policy = "P") {
  RegretTrace t;
  t.cumulative = std::move(v);
  t.policy = policy;
  return t;
}

TEST_CASE("aggregate") {
  const PolicyCurve same =
      aggregate({trace({1, 2, 3}), trace({1, 2, 3}), trace({1, 2, 3})});
  CHECK(same.se2 == std::vector<double>(3, 0.0));
  CHECK(same.mean == std::vector<double>{1, 2, 3});
  const PolicyCurve two = aggregate({trace({0, 2}), trace({2, 4})});
  // sd = sqrt(2), se2 = 2 sqrt(2) / sqrt(2) = 2.
  CHECK(two.mean == std::vector<double>{1, 3});
  CHECK(two.se2[0] == doctest::Approx(2.0));
  CHECK(two.num_traces == 2);
  CHECK_THROWS_AS(aggregate({trace({1})}), std::invalid_argument);
  CHECK_THROWS_AS(aggregate({trace({1}), trace({1, 2})}),
                  std::invalid_argument);
}

TEST_CASE("suite band shrinks with repetitions") {
  ExperimentConfig c = small_linear(PolicyKind::kLinUcb, 300);
  c.repetitions = 10;
  const double few = run_suite(c, 2).curves[0].final_se2();
  c.repetitions = 40;
  const AggregateResult many = run_suite(c, 2);
  const double ratio = few / many.curves[0].final_se2();
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.3));
  for (std::size_t i = 1; i < many.curves[0].mean.size(); ++i) {
    CHECK(many.curves[0].mean[i] >= many.curves[0].mean[i - 1]);
  }
  // Thread count does not change the result.
  CHECK(run_suite(c, 1).curves[0].mean == many.curves[0].mean);
}

TEST_CASE("suite reports the failing seed") {
  ExperimentConfig c = small_linear(PolicyKind::kGpUcb, 3);
  c.policy.kernel = KernelSpec::Rbf(0.2);
  c.policy.lambda = 1e-300;  // repeated action makes the GP factor singular
  c.environment.num_actions = 1;
  c.repetitions = 3;
  c.base_seed = 7;
  try {
    run_suite(c, 1);
    FAIL("expected failure");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("seed 7") != std::string::npos);
  }
  c.repetitions = 1;
  CHECK_THROWS_AS(run_suite(c, 1), ConfigError);
}

TEST_CASE("csv roundtrip") {
  AggregateResult r;
  r.curves.push_back({"A", {0.1, 1.0 / 3.0, 2.5}, {0.0, 1e-17, 0.7}, 5});
  r.curves.push_back({"B", {1e6 / 7.0, 2.0, 3.0}, {0.1, 0.2, 0.3}, 5});
  const std::string path = "harness_roundtrip.csv";
  emit_csv(r, path);
  int rows = 0;
  {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) ++rows;
  }
  CHECK(rows == 3 * 2 + 1);
  const AggregateResult back = read_csv(path);
  REQUIRE(back.curves.size() == 2);
  for (std::size_t c = 0; c < 2; ++c) {
    CHECK(back.curves[c].policy == r.curves[c].policy);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::abs(back.curves[c].mean[i] - r.curves[c].mean[i]) <= 1e-12);
      CHECK(std::abs(back.curves[c].se2[i] - r.curves[c].se2[i]) <= 1e-12);
    }
  }
  emit_csv(AggregateResult{}, path);
  std::ifstream in(path);
  std::string all((std::istreambuf_iterator<char>(in)), {});
  CHECK(all == "step,policy,mean_regret,se2\n");
  CHECK(read_csv(path).curves.empty());
  std::remove(path.c_str());
  CHECK_THROWS_AS(emit_csv(r, "/nonexistent-dir/out.csv"), std::runtime_error);
  CHECK_THROWS_AS(read_csv("/nonexistent-dir/out.csv"), std::runtime_error);
}

TEST_CASE("experiment json") {
  const auto cfgs = parse_experiment_json(R"({
    "name": "demo", "repetitions": 3, "seed": 11,
    "environment": {"objective": "linear", "dim": 3, "num_actions": 5,
                    "noise_variance": 0.25, "horizon": 40,
                    "bias": {"type": "drift", "rate": 0.2}},
    "policies": [
      {"type": "IDS-two", "d_max": 0.2, "label": "ids"},
      {"type": "GPUCB"},
      {"type": "ids_one", "c_max": 1, "kernel": {"family": "rbf",
       "lengthscale": 0.5}, "beta": 2}
    ]})");
  REQUIRE(cfgs.size() == 3);
  CHECK(cfgs[0].name == "demo");
  CHECK(cfgs[0].repetitions == 3);
  CHECK(cfgs[0].base_seed == 11);
  CHECK(cfgs[0].environment.sigma == 0.5);
  CHECK(cfgs[0].environment.bias.kind == BiasSchedule::Kind::kDrift);
  CHECK(cfgs[0].environment.bias.rate == 0.2);
  CHECK(cfgs[0].policy.id() == "ids");
  CHECK(*cfgs[0].policy.d_max == 0.2);
  CHECK(cfgs[1].policy.kernel.family == KernelFamily::kRbf);
  CHECK(cfgs[1].policy.kernel.lengthscale == 0.2);
  CHECK(cfgs[2].policy.kind == PolicyKind::kIdsOne);
  CHECK(*cfgs[2].policy.beta_fixed == 2.0);
  CHECK(cfgs[2].policy.kernel.lengthscale == 0.5);

  const char* bad[] = {
      "not json",
      R"({"environment": {"objective": "linear"}, "policies": [],
          "extra": 1})",
      R"({"environment": {"objective": "linear"}, "policies": []})",
      R"({"environment": {"objective": "torus"},
          "policies": [{"type": "LinUCB"}]})",
      R"({"environment": {"objective": "linear", "horizon": 0},
          "policies": [{"type": "LinUCB"}]})",
      R"({"environment": {"objective": "linear", "sigma": 1,
          "noise_variance": 1}, "policies": [{"type": "LinUCB"}]})",
      R"({"environment": {"objective": "linear"},
          "policies": [{"type": "IDS-one"}]})",
      R"({"environment": {"objective": "camelback"},
          "policies": [{"type": "SemiTS"}]})",
      R"({"environment": {"objective": "linear", "bias": {"type": "wobble"}},
          "policies": [{"type": "LinUCB"}]})",
      R"({"environment": {"objective": "linear"},
          "policies": [{"type": "LinUCB", "alpha": 1}]})",
      R"({"environment": {"objective": "linear", "dim": "four"},
          "policies": [{"type": "LinUCB"}]})",
  };
  for (const char* text : bad) {
    CHECK_THROWS_AS(parse_experiment_json(text), ConfigError);
  }
  CHECK_THROWS_AS(load_experiment_file("/nonexistent/x.json"), ConfigError);
}

TEST_CASE("shipped configs parse") {
  int files = 0;
  for (const auto& entry :
       std::filesystem::directory_iterator(DUELBO_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++files;
    CAPTURE(entry.path().string());
    const auto cfgs = load_experiment_file(entry.path().string());
    CHECK_FALSE(cfgs.empty());
  }
  CHECK(files >= 6);
}

}  // namespace
}  // namespace duelbo
