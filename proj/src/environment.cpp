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

#include "duelbo/environment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "duelbo/errors.hpp"

namespace duelbo {

double camelback(double x1, double x2) {
  if (!(x1 >= -2.0 && x1 <= 2.0 && x2 >= -1.0 && x2 <= 1.0)) {
    throw std::invalid_argument("camelback: point outside [-2,2]x[-1,1]");
  }
  const double a = x1 * x1;
  const double inner = a * (4.0 - 2.1 * a + a * a / 3.0) + x1 * x2 +
                       x2 * x2 * (4.0 * x2 * x2 - 4.0);
  return -std::min(inner, 2.5);
}

namespace {

double grid_coord(double lo, double hi, int i, int n) {
  if (i == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

ActionSet camelback_grid(int per_dim) {
  if (per_dim < 2) {
    throw std::invalid_argument("camelback grid needs >= 2 points per axis");
  }
  Matrix pts(per_dim * per_dim, 2);
  for (int i = 0; i < per_dim; ++i) {
    for (int j = 0; j < per_dim; ++j) {
      pts(i * per_dim + j, 0) = grid_coord(-2.0, 2.0, i, per_dim);
      pts(i * per_dim + j, 1) = grid_coord(-1.0, 1.0, j, per_dim);
    }
  }
  return ActionSet(std::move(pts));
}

ActionSet sample_sphere_actions(int d, int k, Rng& rng) {
  if (d < 1 || k < 1) {
    throw std::invalid_argument("sample_sphere_actions: need d >= 1, k >= 1");
  }
  Matrix pts(k, d);
  for (int i = 0; i < k; ++i) {
    double norm = 0.0;
    do {
      for (int j = 0; j < d; ++j) pts(i, j) = rng.normal();
      norm = pts.row(i).norm();
    } while (norm == 0.0);
    pts.row(i) /= norm;
  }
  return ActionSet(std::move(pts));
}

Objective::Objective(Kind kind, Vector theta, ActionSet actions)
    : kind_(kind), theta_(std::move(theta)), actions_(std::move(actions)) {
  values_.resize(actions_.size());
  for (Eigen::Index i = 0; i < actions_.size(); ++i) {
    values_(i) = value(actions_.point(i));
  }
  best_ = values_(0);
  best_index_ = 0;
  for (Eigen::Index i = 1; i < values_.size(); ++i) {
    if (values_(i) > best_) {
      best_ = values_(i);
      best_index_ = i;
    }
  }
}

Objective Objective::Linear(Vector theta, ActionSet actions) {
  if (theta.size() != actions.dim()) {
    throw std::invalid_argument("linear objective: dimension mismatch");
  }
  return Objective(Kind::kLinear, std::move(theta), std::move(actions));
}

Objective Objective::Camelback(int per_dim) {
  return Objective(Kind::kCamelback, Vector(), camelback_grid(per_dim));
}

double Objective::value(const Vector& x) const {
  if (kind_ == Kind::kLinear) {
    if (x.size() != theta_.size()) {
      throw std::invalid_argument("linear objective: dimension mismatch");
    }
    return x.dot(theta_);
  }
  if (x.size() != 2) {
    throw std::invalid_argument("camelback takes two coordinates");
  }
  return camelback(x(0), x(1));
}

BiasSchedule BiasSchedule::NegativeRepeat() {
  BiasSchedule s;
  s.kind = Kind::kNegativeRepeat;
  return s;
}

BiasSchedule BiasSchedule::Drift(double rate) {
  BiasSchedule s;
  s.kind = Kind::kDrift;
  s.rate = rate;
  return s;
}

BiasSchedule BiasSchedule::CompensatedDrift(double rate) {
  BiasSchedule s;
  s.kind = Kind::kCompensatedDrift;
  s.rate = rate;
  return s;
}

BiasSchedule BiasSchedule::Calibration(int window, double band) {
  if (window < 1 || !(band >= 0.0)) {
    throw std::invalid_argument("calibration needs window >= 1, band >= 0");
  }
  BiasSchedule s;
  s.kind = Kind::kCalibration;
  s.window = window;
  s.band = band;
  return s;
}

BiasSchedule BiasSchedule::PeriodicDrift() {
  BiasSchedule s;
  s.kind = Kind::kPeriodicDrift;
  return s;
}

BiasSchedule BiasSchedule::Constant(double value) {
  BiasSchedule s;
  s.kind = Kind::kConstant;
  s.value = value;
  return s;
}

std::string to_string(BiasSchedule::Kind kind) {
  switch (kind) {
    case BiasSchedule::Kind::kNone: return "none";
    case BiasSchedule::Kind::kNegativeRepeat: return "negative_repeat";
    case BiasSchedule::Kind::kDrift: return "drift";
    case BiasSchedule::Kind::kCompensatedDrift: return "compensated_drift";
    case BiasSchedule::Kind::kCalibration: return "calibration";
    case BiasSchedule::Kind::kPeriodicDrift: return "periodic_drift";
    case BiasSchedule::Kind::kConstant: return "constant";
  }
  return "unknown";
}

BiasSchedule::Kind bias_kind_from_string(const std::string& name) {
  for (auto kind :
       {BiasSchedule::Kind::kNone, BiasSchedule::Kind::kNegativeRepeat,
        BiasSchedule::Kind::kDrift, BiasSchedule::Kind::kCompensatedDrift,
        BiasSchedule::Kind::kCalibration, BiasSchedule::Kind::kPeriodicDrift,
        BiasSchedule::Kind::kConstant}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown bias schedule: " + name);
}

BiasSchedule::Echo bias_echo_from_string(const std::string& name) {
  if (name == "unconfounded") return BiasSchedule::Echo::kUnconfounded;
  if (name == "observed") return BiasSchedule::Echo::kObserved;
  throw std::invalid_argument("unknown echo source: " + name);
}

double BiasProcess::bias(long t) const {
  const double td = static_cast<double>(t);
  switch (schedule_.kind) {
    case BiasSchedule::Kind::kNone: return 0.0;
    case BiasSchedule::Kind::kNegativeRepeat: return -last_echo_;
    case BiasSchedule::Kind::kDrift: return -schedule_.rate * td;
    case BiasSchedule::Kind::kCompensatedDrift:
      return -schedule_.rate * td + last_echo_;
    case BiasSchedule::Kind::kCalibration: return offset_;
    case BiasSchedule::Kind::kPeriodicDrift:
      return std::sin(schedule_.frequency * td) - schedule_.rate * td;
    case BiasSchedule::Kind::kConstant: return schedule_.value;
  }
  return 0.0;
}

void BiasProcess::observe(double y, double outcome) {
  last_echo_ =
      schedule_.echo == BiasSchedule::Echo::kObserved ? y : outcome;
  if (schedule_.kind != BiasSchedule::Kind::kCalibration) return;
  window_.push_back(y);
  if (static_cast<int>(window_.size()) < schedule_.window) return;
  double sum = 0.0;
  for (double v : window_) sum += v;
  const double avg = sum / static_cast<double>(window_.size());
  if (std::abs(avg) > schedule_.band) {
    offset_ -= avg;
    window_.clear();
  } else {
    window_.pop_front();
  }
}

double bias_value(const BiasSchedule& schedule, long t,
                  std::span<const double> y_history,
                  std::span<const double> outcome_history) {
  if (t < 1) throw std::invalid_argument("bias_value: t must be >= 1");
  const auto needed = static_cast<std::size_t>(t - 1);
  if (y_history.size() < needed) {
    throw std::invalid_argument("bias_value: history shorter than t - 1");
  }
  const bool echoes_outcome =
      schedule.echo == BiasSchedule::Echo::kUnconfounded &&
      (schedule.kind == BiasSchedule::Kind::kNegativeRepeat ||
       schedule.kind == BiasSchedule::Kind::kCompensatedDrift);
  if (echoes_outcome && outcome_history.size() < needed) {
    throw std::invalid_argument(
        "bias_value: schedule needs the unconfounded outcome history");
  }
  BiasProcess process(schedule);
  for (std::size_t s = 0; s < needed; ++s) {
    process.observe(y_history[s],
                    s < outcome_history.size() ? outcome_history[s] : 0.0);
  }
  return process.bias(t);
}

ConfoundedEnv::ConfoundedEnv(Objective objective, double sigma,
                             BiasSchedule schedule, long horizon,
                             Rng noise_rng)
    : objective_(std::move(objective)),
      sigma_(sigma),
      schedule_(schedule),
      horizon_(horizon),
      noise_rng_(std::move(noise_rng)),
      bias_(schedule) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
  log_.reserve(static_cast<std::size_t>(horizon));
  y_history_.reserve(static_cast<std::size_t>(horizon));
  outcomes_.reserve(static_cast<std::size_t>(horizon));
}

double ConfoundedEnv::step(const Vector& x) {
  if (step_count() >= horizon_) {
    throw HorizonError("environment horizon exhausted");
  }
  StepRecord rec;
  rec.t = step_count() + 1;
  rec.x = x;
  rec.f = objective_.value(x);
  rec.bias = bias_.bias(rec.t);
  rec.noise = sigma_ > 0.0 ? sigma_ * noise_rng_.normal() : 0.0;
  rec.y = rec.f + rec.bias + rec.noise;
  bias_.observe(rec.y, rec.f + rec.noise);
  y_history_.push_back(rec.y);
  outcomes_.push_back(rec.f + rec.noise);
  log_.push_back(std::move(rec));
  return log_.back().y;
}

void ConfoundedEnv::write_debug_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open debug log: " + path);
  out << "t,x,f_x,b_t,eps_t,y_t\n" << std::setprecision(17);
  for (const auto& rec : log_) {
    out << rec.t << ',';
    for (Eigen::Index i = 0; i < rec.x.size(); ++i) {
      out << (i ? " " : "") << rec.x(i);
    }
    out << ',' << rec.f << ',' << rec.bias << ',' << rec.noise << ','
        << rec.y << '\n';
  }
  if (!out) throw std::runtime_error("failed writing debug log: " + path);
}

}  // namespace duelbo
