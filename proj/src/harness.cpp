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

#include "duelbo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "duelbo/errors.hpp"
#include "json.hpp"

namespace duelbo {

using nlohmann::json;

// -- Names -------------------------------------------------------------------

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kIdsOne: return "IDS-one";
    case PolicyKind::kIdsTwo: return "IDS-two";
    case PolicyKind::kLinUcb: return "LinUCB";
    case PolicyKind::kGpUcb: return "GPUCB";
    case PolicyKind::kSemiTs: return "SemiTS";
    case PolicyKind::kBose: return "BOSE";
  }
  return "unknown";
}

PolicyKind policy_kind_from_string(const std::string& name) {
  std::string key;
  for (char c : name) {
    if (c == '_') c = '-';
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  for (auto kind : {PolicyKind::kIdsOne, PolicyKind::kIdsTwo,
                    PolicyKind::kLinUcb, PolicyKind::kGpUcb,
                    PolicyKind::kSemiTs, PolicyKind::kBose}) {
    std::string label = to_string(kind);
    std::transform(label.begin(), label.end(), label.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (label == key) return kind;
  }
  throw ConfigError("unknown policy type: " + name);
}

const PolicyCurve* AggregateResult::find(const std::string& policy) const {
  for (const auto& curve : curves) {
    if (curve.policy == policy) return &curve;
  }
  return nullptr;
}

// -- Validation --------------------------------------------------------------

void ExperimentConfig::validate() const {
  const auto& env = environment;
  const auto& pol = policy;
  if (env.horizon < 0) throw ConfigError("horizon must be >= 0");
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (!(env.sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
  const bool linear = env.objective == Objective::Kind::kLinear;
  if (linear) {
    if (env.dim < 1 || env.num_actions < 1) {
      throw ConfigError("linear environment needs dim >= 1, num_actions >= 1");
    }
    if (!(env.theta_norm > 0.0)) throw ConfigError("theta_norm must be > 0");
  } else if (env.grid < 2) {
    throw ConfigError("camelback grid needs >= 2 points per axis");
  }
  if (env.bias.kind == BiasSchedule::Kind::kCalibration &&
      (env.bias.window < 1 || !(env.bias.band >= 0.0))) {
    throw ConfigError("calibration needs window >= 1 and band >= 0");
  }
  if (!(pol.lambda > 0.0)) throw ConfigError("lambda must be > 0");
  if (!(pol.delta > 0.0 && pol.delta < 1.0)) {
    throw ConfigError("delta must lie in (0, 1)");
  }
  if (!(pol.norm_bound > 0.0)) throw ConfigError("norm_bound must be > 0");
  if (pol.kernel.family == KernelFamily::kRbf && !(pol.kernel.lengthscale > 0.0)) {
    throw ConfigError("RBF lengthscale must be > 0");
  }
  if (pol.beta_fixed && !(*pol.beta_fixed >= 0.0)) {
    throw ConfigError("beta must be >= 0");
  }
  switch (pol.kind) {
    case PolicyKind::kIdsOne:
      if (!pol.c_max || !(*pol.c_max >= 0.0) || !std::isfinite(*pol.c_max)) {
        throw ConfigError("IDS-one requires a finite c_max >= 0");
      }
      break;
    case PolicyKind::kIdsTwo:
      if (!pol.d_max || !(*pol.d_max >= 0.0) || !std::isfinite(*pol.d_max)) {
        throw ConfigError("IDS-two requires a finite d_max >= 0");
      }
      break;
    case PolicyKind::kLinUcb:
    case PolicyKind::kSemiTs:
    case PolicyKind::kBose:
      if (!linear) {
        throw ConfigError(to_string(pol.kind) + " requires a linear objective");
      }
      if (pol.kind == PolicyKind::kSemiTs && pol.semits_samples < 1) {
        throw ConfigError("SemiTS needs >= 1 sample");
      }
      if (pol.kind == PolicyKind::kBose &&
          (pol.bose_iterations < 0 || !(pol.bose_step > 0.0))) {
        throw ConfigError("BOSE needs iterations >= 0 and step > 0");
      }
      break;
    case PolicyKind::kGpUcb:
      if (!(pol.ucb_beta >= 0.0)) throw ConfigError("ucb_beta must be >= 0");
      break;
  }
  const bool ids =
      pol.kind == PolicyKind::kIdsOne || pol.kind == PolicyKind::kIdsTwo;
  if (ids && !pol.beta_fixed) {
    const double bound = pol.kind == PolicyKind::kIdsOne ? *pol.c_max
                                                         : *pol.d_max;
    if (!(env.sigma > 0.0 || bound > 0.0)) {
      throw ConfigError(
          "IDS confidence scale is zero: need sigma > 0, a positive bias "
          "bound, or a fixed beta");
    }
  }
  if ((ids || pol.kind == PolicyKind::kGpUcb) && !linear &&
      pol.kernel.family == KernelFamily::kLinear) {
    throw ConfigError("linear kernel needs unit-norm actions (linear objective)");
  }
}

// -- Runs --------------------------------------------------------------------

Objective make_objective(const EnvironmentSpec& env, std::uint64_t seed) {
  if (env.objective == Objective::Kind::kCamelback) {
    return Objective::Camelback(env.grid);
  }
  Rng rng(seed, Stream::kInstance);
  ActionSet actions = sample_sphere_actions(env.dim, env.num_actions, rng);
  Vector theta(env.dim);
  do {
    for (int j = 0; j < env.dim; ++j) theta(j) = rng.normal();
  } while (theta.norm() == 0.0);
  theta *= env.theta_norm / theta.norm();
  return Objective::Linear(std::move(theta), std::move(actions));
}

std::unique_ptr<Policy> make_policy(const ExperimentConfig& config,
                                    const ActionSet& actions,
                                    std::uint64_t seed, IdsObserver observer) {
  const PolicySpec& pol = config.policy;
  switch (pol.kind) {
    case PolicyKind::kIdsOne:
    case PolicyKind::kIdsTwo: {
      IdsSettings settings;
      settings.reduction = pol.kind == PolicyKind::kIdsOne
                               ? ReductionKind::OnePoint(*pol.c_max)
                               : ReductionKind::TwoPoint(*pol.d_max);
      settings.kernel = pol.kernel;
      settings.lambda = pol.lambda;
      settings.norm_bound = pol.norm_bound;
      settings.delta = pol.delta;
      settings.beta_fixed = pol.beta_fixed;
      return std::make_unique<IdsPolicy>(
          settings, config.environment.sigma, actions,
          Rng(seed, Stream::kPolicy), Rng(seed, Stream::kCoin),
          std::move(observer));
    }
    case PolicyKind::kLinUcb:
      return std::make_unique<LinUcbPolicy>(actions, pol.lambda, pol.delta);
    case PolicyKind::kGpUcb:
      return std::make_unique<GpUcbPolicy>(pol.kernel, pol.lambda,
                                           pol.ucb_beta, actions);
    case PolicyKind::kSemiTs:
      return std::make_unique<SemiTsPolicy>(actions, pol.lambda, pol.delta,
                                            pol.semits_samples, seed);
    case PolicyKind::kBose:
      return std::make_unique<BosePolicy>(actions, pol.lambda, pol.delta,
                                          pol.bose_iterations, pol.bose_step,
                                          Rng(seed, Stream::kPolicy));
  }
  throw ConfigError("unsupported policy");
}

RegretTrace run_single(const ExperimentConfig& config, std::uint64_t seed,
                       const RunOptions& options) {
  config.validate();
  RegretTrace trace;
  trace.seed = seed;
  trace.policy = config.policy.id();
  const auto& spec = config.environment;
  if (spec.horizon == 0) return trace;

  Objective objective = make_objective(spec, seed);
  const ActionSet actions = objective.actions();
  ConfoundedEnv env(std::move(objective), spec.sigma, spec.bias, spec.horizon,
                    Rng(seed, Stream::kNoise));
  auto policy = make_policy(config, actions, seed, options.ids_observer);

  std::vector<double> gaps;
  gaps.reserve(static_cast<std::size_t>(spec.horizon));
  while (env.remaining() > 0) policy->play(env, gaps);

  trace.cumulative.resize(gaps.size());
  double total = 0.0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    total += gaps[i];
    trace.cumulative[i] = total;
  }
  if (!options.debug_log.empty()) env.write_debug_csv(options.debug_log);
  return trace;
}

PolicyCurve aggregate(const std::vector<RegretTrace>& traces) {
  if (traces.size() < 2) {
    throw std::invalid_argument("aggregation needs at least two traces");
  }
  const std::size_t len = traces.front().cumulative.size();
  for (const auto& tr : traces) {
    if (tr.cumulative.size() != len) {
      throw std::invalid_argument("traces have different lengths");
    }
  }
  const double n = static_cast<double>(traces.size());
  PolicyCurve curve;
  curve.policy = traces.front().policy;
  curve.num_traces = traces.size();
  curve.mean.assign(len, 0.0);
  curve.se2.assign(len, 0.0);
  for (std::size_t i = 0; i < len; ++i) {
    double sum = 0.0;
    for (const auto& tr : traces) sum += tr.cumulative[i];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& tr : traces) {
      const double dev = tr.cumulative[i] - mean;
      ss += dev * dev;
    }
    curve.mean[i] = mean;
    curve.se2[i] = 2.0 * std::sqrt(ss / (n - 1.0) / n);
  }
  return curve;
}

AggregateResult run_suite(const ExperimentConfig& config, int jobs) {
  config.validate();
  if (config.repetitions < 2) {
    throw ConfigError("a suite needs at least two repetitions");
  }
  const auto reps = static_cast<std::size_t>(config.repetitions);
  std::vector<RegretTrace> traces(reps);
  std::vector<std::exception_ptr> errors(reps);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < reps; i = next++) {
      try {
        traces[i] = run_single(config, config.base_seed + i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, config.repetitions));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < reps; ++i) {
    if (!errors[i]) continue;
    std::string what = "unknown error";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    throw std::runtime_error(config.name + "/" + config.policy.id() +
                             ": run with seed " +
                             std::to_string(config.base_seed + i) +
                             " failed: " + what);
  }
  AggregateResult result;
  result.curves.push_back(aggregate(traces));
  return result;
}

// -- CSV ---------------------------------------------------------------------

void emit_csv(const AggregateResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "step,policy,mean_regret,se2\n" << std::setprecision(17);
  for (const auto& curve : result.curves) {
    for (std::size_t i = 0; i < curve.mean.size(); ++i) {
      out << (i + 1) << ',' << curve.policy << ',' << curve.mean[i] << ','
          << curve.se2[i] << '\n';
    }
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing: " + path);
}

AggregateResult read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "step,policy,mean_regret,se2") {
    throw std::runtime_error("unexpected CSV header in " + path);
  }
  AggregateResult result;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string step, policy, mean, se2;
    if (!std::getline(row, step, ',') || !std::getline(row, policy, ',') ||
        !std::getline(row, mean, ',') || !std::getline(row, se2)) {
      throw std::runtime_error("malformed CSV row: " + line);
    }
    if (result.curves.empty() || result.curves.back().policy != policy) {
      result.curves.push_back(PolicyCurve{policy, {}, {}, 0});
    }
    result.curves.back().mean.push_back(std::stod(mean));
    result.curves.back().se2.push_back(std::stod(se2));
  }
  return result;
}

// -- JSON --------------------------------------------------------------------

namespace {

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* key : allowed) ok = ok || item.key() == key;
    if (!ok) throw ConfigError("unknown key '" + item.key() + "' in " + where);
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  return obj.contains(key) ? obj.at(key).get<T>() : fallback;
}

BiasSchedule parse_bias(const json& j) {
  check_keys(j, {"type", "rate", "frequency", "window", "band", "value", "echo"},
             "environment.bias");
  BiasSchedule bias;
  bias.kind = bias_kind_from_string(j.at("type").get<std::string>());
  bias.rate = get_or(j, "rate", bias.rate);
  bias.frequency = get_or(j, "frequency", bias.frequency);
  bias.window = get_or(j, "window", bias.window);
  bias.band = get_or(j, "band", bias.band);
  bias.value = get_or(j, "value", bias.value);
  if (j.contains("echo")) {
    bias.echo = bias_echo_from_string(j.at("echo").get<std::string>());
  }
  return bias;
}

EnvironmentSpec parse_environment(const json& j) {
  check_keys(j,
             {"objective", "dim", "num_actions", "theta_norm", "grid", "sigma",
              "noise_variance", "horizon", "bias"},
             "environment");
  EnvironmentSpec env;
  const auto objective = j.at("objective").get<std::string>();
  if (objective == "linear") {
    env.objective = Objective::Kind::kLinear;
  } else if (objective == "camelback") {
    env.objective = Objective::Kind::kCamelback;
  } else {
    throw ConfigError("unknown objective: " + objective);
  }
  env.dim = get_or(j, "dim", env.dim);
  env.num_actions = get_or(j, "num_actions", env.num_actions);
  env.theta_norm = get_or(j, "theta_norm", env.theta_norm);
  env.grid = get_or(j, "grid", env.grid);
  if (j.contains("sigma") && j.contains("noise_variance")) {
    throw ConfigError("give either sigma or noise_variance, not both");
  }
  env.sigma = get_or(j, "sigma", env.sigma);
  if (j.contains("noise_variance")) {
    const double var = j.at("noise_variance").get<double>();
    if (!(var >= 0.0)) throw ConfigError("noise_variance must be >= 0");
    env.sigma = std::sqrt(var);
  }
  env.horizon = get_or(j, "horizon", env.horizon);
  if (j.contains("bias")) env.bias = parse_bias(j.at("bias"));
  return env;
}

PolicySpec parse_policy(const json& j) {
  check_keys(j,
             {"type", "label", "kernel", "lambda", "norm_bound", "delta",
              "c_max", "d_max", "beta", "ucb_beta", "samples", "iterations",
              "step"},
             "policy");
  PolicySpec pol;
  pol.kind = policy_kind_from_string(j.at("type").get<std::string>());
  pol.label = get_or<std::string>(j, "label", "");
  if (j.contains("kernel")) {
    const json& k = j.at("kernel");
    check_keys(k, {"family", "lengthscale"}, "policy.kernel");
    pol.kernel.family =
        kernel_family_from_string(k.at("family").get<std::string>());
    pol.kernel.lengthscale = get_or(k, "lengthscale", 1.0);
  } else if (pol.kind == PolicyKind::kGpUcb) {
    pol.kernel = KernelSpec{KernelFamily::kRbf, 0.2};
  }
  pol.lambda = get_or(j, "lambda", pol.lambda);
  pol.norm_bound = get_or(j, "norm_bound", pol.norm_bound);
  pol.delta = get_or(j, "delta", pol.delta);
  if (j.contains("c_max")) pol.c_max = j.at("c_max").get<double>();
  if (j.contains("d_max")) pol.d_max = j.at("d_max").get<double>();
  if (j.contains("beta")) pol.beta_fixed = j.at("beta").get<double>();
  pol.ucb_beta = get_or(j, "ucb_beta", pol.ucb_beta);
  pol.semits_samples = get_or(j, "samples", pol.semits_samples);
  pol.bose_iterations = get_or(j, "iterations", pol.bose_iterations);
  pol.bose_step = get_or(j, "step", pol.bose_step);
  return pol;
}

}  // namespace

std::vector<ExperimentConfig> parse_experiment_json(const std::string& text) {
  std::vector<ExperimentConfig> configs;
  try {
    const json j = json::parse(text);
    check_keys(j, {"name", "repetitions", "seed", "environment", "policies"},
               "experiment");
    ExperimentConfig base;
    base.name = get_or<std::string>(j, "name", base.name);
    base.repetitions = get_or(j, "repetitions", base.repetitions);
    base.base_seed = get_or<std::uint64_t>(j, "seed", base.base_seed);
    base.environment = parse_environment(j.at("environment"));
    if (base.environment.horizon < 1) {
      throw ConfigError("horizon must be >= 1");
    }
    const json& policies = j.at("policies");
    if (!policies.is_array() || policies.empty()) {
      throw ConfigError("policies must be a non-empty array");
    }
    for (const auto& p : policies) {
      ExperimentConfig cfg = base;
      cfg.policy = parse_policy(p);
      cfg.validate();
      configs.push_back(std::move(cfg));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid experiment JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return configs;
}

std::vector<ExperimentConfig> load_experiment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_json(buffer.str());
}

}  // namespace duelbo
