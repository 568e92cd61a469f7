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

#ifndef DUELBO_ENVIRONMENT_HPP_
#define DUELBO_ENVIRONMENT_HPP_

#include <deque>
#include <span>
#include <string>
#include <vector>

#include "duelbo/action_posterior.hpp"
#include "duelbo/random.hpp"

namespace duelbo {

// Six-hump camelback, negated and clipped:
// -min(x1^2 (4 - 2.1 x1^2 + x1^4 / 3) + x1 x2 + x2^2 (4 x2^2 - 4), 2.5).
// Throws std::invalid_argument outside [-2, 2] x [-1, 1].
double camelback(double x1, double x2);

// `per_dim` equispaced points per axis over [-2, 2] x [-1, 1], endpoints
// included; x1 varies slowest.
ActionSet camelback_grid(int per_dim);

// k isotropic unit vectors in R^d (normalized Gaussians).
ActionSet sample_sphere_actions(int d, int k, Rng& rng);

// Objective restricted to a finite action set. Gaps are measured against
// the best action in that set.
class Objective {
 public:
  enum class Kind { kLinear, kCamelback };

  static Objective Linear(Vector theta, ActionSet actions);
  static Objective Camelback(int per_dim);

  Kind kind() const { return kind_; }
  const ActionSet& actions() const { return actions_; }
  const Vector& theta() const { return theta_; }

  double value(const Vector& x) const;
  double value(Eigen::Index action) const { return values_(action); }
  const Vector& values() const { return values_; }
  double best_value() const { return best_; }
  Eigen::Index best_action() const { return best_index_; }

  // f(x*) - f(x), where x* maximizes f over the action set.
  double true_gap(const Vector& x) const { return best_ - value(x); }
  double true_gap(Eigen::Index action) const { return best_ - values_(action); }

 private:
  Objective(Kind kind, Vector theta, ActionSet actions);

  Kind kind_;
  Vector theta_;
  ActionSet actions_;
  Vector values_;
  double best_ = 0.0;
  Eigen::Index best_index_ = 0;
};

// Additive confounding b_t, indexed by the 1-based environment step t.
// The repeat-type schedules (negative repeat, compensated drift) echo the
// previous step's outcome. By default that is the unconfounded outcome
// f(x_{t-1}) + eps_{t-1}, which keeps the echoed term bounded; `kObserved`
// echoes the confounded y_{t-1} instead, which compounds into a random walk.
struct BiasSchedule {
  enum class Echo { kUnconfounded, kObserved };

  enum class Kind {
    kNone,
    kNegativeRepeat,    // -y_{t-1}
    kDrift,             // -rate t
    kCompensatedDrift,  // -rate t + y_{t-1}
    kCalibration,       // re-centering offset, see BiasProcess
    kPeriodicDrift,     // sin(frequency t) - rate t
    kConstant,          // value
  };

  Kind kind = Kind::kNone;
  double rate = 0.1;
  double frequency = 0.2;
  int window = 10;
  double band = 0.1;
  double value = 0.0;
  Echo echo = Echo::kUnconfounded;

  static BiasSchedule None() { return {}; }
  static BiasSchedule NegativeRepeat();
  static BiasSchedule Drift(double rate = 0.1);
  static BiasSchedule CompensatedDrift(double rate = 0.1);
  static BiasSchedule Calibration(int window = 10, double band = 0.1);
  static BiasSchedule PeriodicDrift();
  static BiasSchedule Constant(double value);
};

std::string to_string(BiasSchedule::Kind kind);
BiasSchedule::Kind bias_kind_from_string(const std::string& name);
BiasSchedule::Echo bias_echo_from_string(const std::string& name);

// Incremental evaluation of a schedule. The calibration adversary keeps an
// offset o (initially 0) and a window of raw observations collected since
// its last adjustment; once the window holds `window` values whose mean m
// lies outside [-band, band], it sets o <- o - m and clears the window.
class BiasProcess {
 public:
  explicit BiasProcess(BiasSchedule schedule) : schedule_(schedule) {}

  // Bias for step t given that steps 1..t-1 have been recorded.
  double bias(long t) const;
  // Records the confounded observation y_t and the unconfounded outcome
  // f(x_t) + eps_t of step t.
  void observe(double y, double outcome);

 private:
  BiasSchedule schedule_;
  double last_echo_ = 0.0;  // y_0 := 0
  double offset_ = 0.0;
  std::deque<double> window_;
};

// Pure form: b_t from the schedule and the history of steps 1..t-1.
// Requires t >= 1 and y_history.size() >= t - 1; only the first t - 1
// entries are read. `outcome_history` (f + eps per step) is required, with
// the same length rule, when the schedule echoes unconfounded outcomes.
double bias_value(const BiasSchedule& schedule, long t,
                  std::span<const double> y_history,
                  std::span<const double> outcome_history = {});

struct StepRecord {
  long t = 0;
  Vector x;
  double f = 0.0;
  double bias = 0.0;
  double noise = 0.0;
  double y = 0.0;
};

// y_t = f(x_t) + b_t + eps_t with eps_t ~ N(0, sigma^2). The only source of
// scalar observations; single owner per run.
class ConfoundedEnv {
 public:
  ConfoundedEnv(Objective objective, double sigma, BiasSchedule schedule,
                long horizon, Rng noise_rng);

  // Throws HorizonError once step_count() == horizon().
  double step(const Vector& x);

  const Objective& objective() const { return objective_; }
  double sigma() const { return sigma_; }
  const BiasSchedule& schedule() const { return schedule_; }
  long horizon() const { return horizon_; }
  long step_count() const { return static_cast<long>(log_.size()); }
  long remaining() const { return horizon_ - step_count(); }

  const std::vector<StepRecord>& log() const { return log_; }
  const std::vector<double>& y_history() const { return y_history_; }
  // f(x_s) + eps_s per step.
  const std::vector<double>& outcome_history() const { return outcomes_; }
  double true_gap(const Vector& x) const { return objective_.true_gap(x); }

  // CSV with header t,x,f_x,b_t,eps_t,y_t; x is space-separated.
  void write_debug_csv(const std::string& path) const;

 private:
  Objective objective_;
  double sigma_;
  BiasSchedule schedule_;
  long horizon_;
  Rng noise_rng_;
  BiasProcess bias_;
  std::vector<StepRecord> log_;
  std::vector<double> y_history_;
  std::vector<double> outcomes_;
};

}  // namespace duelbo

#endif  // DUELBO_ENVIRONMENT_HPP_
