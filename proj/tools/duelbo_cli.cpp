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

// Command-line front end: run experiment files, run a directory of them, or
// run the acceptance checks.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "duelbo/acceptance.hpp"
#include "duelbo/errors.hpp"
#include "duelbo/harness.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct RunFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::string out;
  int jobs = 1;
  std::string debug_log;
};

std::string debug_path(const std::string& base, const std::string& policy,
                       std::size_t num_policies) {
  if (base.empty() || num_policies == 1) return base;
  fs::path p(base);
  const fs::path stem = p.parent_path() / p.stem();
  return stem.string() + "_" + policy + p.extension().string();
}

duelbo::AggregateResult run_file(const std::string& path, const RunFlags& flags) {
  auto configs = duelbo::load_experiment_file(path);
  duelbo::AggregateResult result;
  for (auto& cfg : configs) {
    if (flags.seed) cfg.base_seed = *flags.seed;
    if (flags.reps) cfg.repetitions = *flags.reps;
    cfg.validate();
    if (!flags.debug_log.empty()) {
      duelbo::RunOptions options;
      options.debug_log =
          debug_path(flags.debug_log, cfg.policy.id(), configs.size());
      duelbo::run_single(cfg, cfg.base_seed, options);
    }
    if (cfg.repetitions >= 2) {
      auto suite = duelbo::run_suite(cfg, flags.jobs);
      result.curves.push_back(std::move(suite.curves.front()));
    } else {
      const auto trace = duelbo::run_single(cfg, cfg.base_seed);
      duelbo::PolicyCurve curve;
      curve.policy = trace.policy;
      curve.mean = trace.cumulative;
      curve.se2.assign(trace.cumulative.size(), 0.0);
      curve.num_traces = 1;
      result.curves.push_back(std::move(curve));
    }
    const auto& curve = result.curves.back();
    std::printf("%-24s %-10s final regret %10.2f +- %.2f (%zu runs)\n",
                configs.front().name.c_str(), curve.policy.c_str(),
                curve.final_mean(), curve.final_se2(), curve.num_traces);
    std::fflush(stdout);
  }
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bias-robust Bayesian optimization benchmark harness"};
  app.require_subcommand(1);

  RunFlags flags;
  auto* run = app.add_subcommand("run", "Run one experiment file");
  run->add_option("--config", flags.config, "Experiment JSON")->required();
  run->add_option("--seed", flags.seed, "Base seed override");
  run->add_option("--reps", flags.reps, "Repetitions override");
  run->add_option("--out", flags.out, "CSV output path");
  run->add_option("--jobs", flags.jobs, "Parallel seeds")->check(CLI::PositiveNumber);
  run->add_option("--debug-log", flags.debug_log,
                  "Per-step environment CSV for the base seed");

  RunFlags suite_flags;
  auto* suite = app.add_subcommand("suite", "Run every experiment in a directory");
  suite->add_option("--config", suite_flags.config, "Directory of JSON files")
      ->required();
  suite->add_option("--seed", suite_flags.seed, "Base seed override");
  suite->add_option("--reps", suite_flags.reps, "Repetitions override");
  suite->add_option("--out", suite_flags.out, "Output directory")->required();
  suite->add_option("--jobs", suite_flags.jobs, "Parallel seeds")
      ->check(CLI::PositiveNumber);

  duelbo::AcceptanceOptions acc;
  auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
  verify->add_option("--only", acc.only, "Criterion ids to run");
  verify->add_option("--jobs", acc.jobs, "Parallel seeds")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      const auto result = run_file(flags.config, flags);
      if (!flags.out.empty()) duelbo::emit_csv(result, flags.out);
      return 0;
    }
    if (*suite) {
      if (!fs::is_directory(suite_flags.config)) {
        throw duelbo::ConfigError("not a directory: " + suite_flags.config);
      }
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(suite_flags.config)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      if (files.empty()) {
        throw duelbo::ConfigError("no .json files in " + suite_flags.config);
      }
      fs::create_directories(suite_flags.out);
      for (const auto& file : files) {
        const auto result = run_file(file.string(), suite_flags);
        duelbo::emit_csv(
            result, (fs::path(suite_flags.out) / file.stem()).string() + ".csv");
      }
      return 0;
    }
    bool all_passed = true;
    duelbo::run_acceptance(acc, [&](const duelbo::CriterionResult& r) {
      all_passed = all_passed && r.passed;
      std::cout << duelbo::format_result(r) << std::endl;
    });
    return all_passed ? 0 : kExitRuntime;
  } catch (const duelbo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
