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

#ifndef DUELBO_HARNESS_HPP_
#define DUELBO_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "duelbo/environment.hpp"
#include "duelbo/policies.hpp"

namespace duelbo {

struct EnvironmentSpec {
  Objective::Kind objective = Objective::Kind::kLinear;
  int dim = 4;          // linear
  int num_actions = 20; // linear
  double theta_norm = 1.0;
  int grid = 30;        // camelback, points per axis
  double sigma = 1.0;
  BiasSchedule bias;
  long horizon = 2000;  // environment steps
};

enum class PolicyKind { kIdsOne, kIdsTwo, kLinUcb, kGpUcb, kSemiTs, kBose };

std::string to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(const std::string& name);

struct PolicySpec {
  PolicyKind kind = PolicyKind::kIdsTwo;
  std::string label;  // defaults to to_string(kind)
  KernelSpec kernel = KernelSpec::Linear();
  double lambda = 1.0;
  double norm_bound = 1.0;
  double delta = 0.05;
  std::optional<double> c_max;       // IDS-one
  std::optional<double> d_max;       // IDS-two
  std::optional<double> beta_fixed;  // IDS; GP-UCB uses ucb_beta
  double ucb_beta = 1.0;
  int semits_samples = 1000;
  int bose_iterations = 200;
  double bose_step = 0.1;

  std::string id() const { return label.empty() ? to_string(kind) : label; }
};

struct ExperimentConfig {
  std::string name = "experiment";
  EnvironmentSpec environment;
  PolicySpec policy;
  int repetitions = 20;
  std::uint64_t base_seed = 1;

  // Throws ConfigError on an incompatible or out-of-range configuration.
  // horizon == 0 is accepted here (it yields an empty trace).
  void validate() const;
};

// Cumulative regret indexed by environment step.
struct RegretTrace {
  std::vector<double> cumulative;
  std::uint64_t seed = 0;
  std::string policy;
};

struct PolicyCurve {
  std::string policy;
  std::vector<double> mean;
  std::vector<double> se2;  // two standard errors
  std::size_t num_traces = 0;

  double final_mean() const { return mean.empty() ? 0.0 : mean.back(); }
  double final_se2() const { return se2.empty() ? 0.0 : se2.back(); }
};

struct AggregateResult {
  std::vector<PolicyCurve> curves;

  const PolicyCurve* find(const std::string& policy) const;
};

struct RunOptions {
  IdsObserver ids_observer;  // only used by IDS policies
  std::string debug_log;     // environment CSV path, empty to skip
};

// Builds the (seeded) objective instance for a run.
Objective make_objective(const EnvironmentSpec& env, std::uint64_t seed);

std::unique_ptr<Policy> make_policy(const ExperimentConfig& config,
                                    const ActionSet& actions,
                                    std::uint64_t seed,
                                    IdsObserver observer = {});

// Runs one seeded repetition to the environment-step horizon.
RegretTrace run_single(const ExperimentConfig& config, std::uint64_t seed,
                       const RunOptions& options = {});

// Mean and 2 x standard error per step. Throws std::invalid_argument for
// fewer than two traces or unequal lengths.
PolicyCurve aggregate(const std::vector<RegretTrace>& traces);

// Runs seeds base_seed .. base_seed + repetitions - 1 on `jobs` threads.
// Throws std::runtime_error naming the first failing seed.
AggregateResult run_suite(const ExperimentConfig& config, int jobs = 1);

// Columns step,policy,mean_regret,se2; rows grouped by policy in curve
// order, steps ascending from 1. Throws std::runtime_error on I/O failure.
void emit_csv(const AggregateResult& result, const std::string& path);
AggregateResult read_csv(const std::string& path);

// JSON experiment file: one environment and a list of policies, expanded to
// one ExperimentConfig per policy. Throws ConfigError.
std::vector<ExperimentConfig> parse_experiment_json(const std::string& text);
std::vector<ExperimentConfig> load_experiment_file(const std::string& path);

}  // namespace duelbo

#endif  // DUELBO_HARNESS_HPP_
