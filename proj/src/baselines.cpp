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

#include "duelbo/baselines.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "duelbo/errors.hpp"

namespace duelbo {

// -- LinUCB ------------------------------------------------------------------

RidgeState::RidgeState(Eigen::Index dim, double lambda)
    : V(Matrix::Identity(dim, dim) * lambda),
      b_vec(Vector::Zero(dim)),
      theta_hat(Vector::Zero(dim)) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
}

void RidgeState::update(const Vector& x, double y) {
  if (x.size() != V.rows()) {
    throw std::invalid_argument("ridge update: dimension mismatch");
  }
  V.noalias() += x * x.transpose();
  b_vec += x * y;
  theta_hat = V.llt().solve(b_vec);
}

double linucb_beta_root(const RidgeState& state, double delta) {
  Eigen::LLT<Matrix> llt(state.V);
  const double log_det =
      2.0 * Matrix(llt.matrixL()).diagonal().array().log().sum();
  return std::sqrt(log_det + 2.0 * std::log(1.0 / delta)) + 1.0;
}

Eigen::Index linucb_select(const RidgeState& state, const ActionSet& actions,
                           double delta) {
  const double root = linucb_beta_root(state, delta);
  Eigen::LLT<Matrix> llt(state.V);
  // |x|_{V^-1}^2 = |L^-1 x|^2.
  const Matrix white = llt.matrixL().solve(actions.points.transpose());
  Eigen::Index best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < actions.size(); ++i) {
    const double score =
        actions.points.row(i).dot(state.theta_hat) + root * white.col(i).norm();
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

// -- GP-UCB ------------------------------------------------------------------

GpPosterior::GpPosterior(const KernelSpec& kernel, double lambda,
                         ActionSet actions)
    : lambda_(lambda), actions_(std::move(actions)) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  gram_ = gram_matrix(kernel, actions_.points);
  prior_var_ = gram_.diagonal();
  white_ = Matrix::Zero(actions_.size(), 16);
  white_sq_ = Vector::Zero(actions_.size());
  means_ = Vector::Zero(actions_.size());
  whitened_y_ = Vector(0);
}

void GpPosterior::observe(Eigen::Index action, double y) {
  if (action < 0 || action >= actions_.size()) {
    throw std::out_of_range("action index out of range");
  }
  if (!std::isfinite(y)) throw std::invalid_argument("observation not finite");
  const auto t = static_cast<Eigen::Index>(observed_.size());
  Vector cross(t);
  for (Eigen::Index s = 0; s < t; ++s) cross(s) = gram_(action, observed_[s]);
  if (!factor_.append(cross, gram_(action, action) + lambda_)) {
    throw NumericalError("GP factor lost positive definiteness");
  }
  observed_.push_back(action);
  const Vector row = factor_.last_row();
  const double prev = t > 0 ? row.head(t).dot(whitened_y_) : 0.0;
  whitened_y_.conservativeResize(t + 1);
  whitened_y_(t) = (y - prev) / row(t);

  if (t + 1 > white_.cols()) {
    Matrix grown = Matrix::Zero(white_.rows(), 2 * white_.cols());
    grown.leftCols(t) = white_.leftCols(t);
    white_.swap(grown);
  }
  Vector column = gram_.col(action);
  if (t > 0) column.noalias() -= white_.leftCols(t) * row.head(t);
  column /= row(t);
  white_.col(t) = column;
  white_sq_ += column.cwiseAbs2();
  means_ += column * whitened_y_(t);
}

Vector GpPosterior::variances() const {
  return (prior_var_ - white_sq_).cwiseMax(0.0);
}

Eigen::Index gpucb_select(const GpPosterior& post, double beta) {
  const Vector sd = post.variances().cwiseSqrt();
  const double root = std::sqrt(beta);
  Eigen::Index best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < sd.size(); ++i) {
    const double score = post.means()(i) + root * sd(i);
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

// -- Doubly-robust estimator ---------------------------------------------------

DrState::DrState(Eigen::Index dim, double lambda)
    : Gamma(Matrix::Identity(dim, dim) * lambda),
      moment(Vector::Zero(dim)),
      theta_dr(Vector::Zero(dim)) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
}

namespace {

// Returns E_mu[x] after validating the support against x_played.
Vector support_mean(const std::vector<SupportPoint>& mu_support,
                    const Vector& x_played, Eigen::Index dim) {
  if (mu_support.empty()) throw std::invalid_argument("empty support");
  if (x_played.size() != dim) {
    throw std::invalid_argument("dr_update: dimension mismatch");
  }
  Vector mean = Vector::Zero(dim);
  double total = 0.0;
  bool found = false;
  for (const auto& [x, prob] : mu_support) {
    if (x.size() != dim) {
      throw std::invalid_argument("dr_update: dimension mismatch");
    }
    if (!(prob >= 0.0)) throw std::invalid_argument("negative probability");
    mean += prob * x;
    total += prob;
    if (prob > 0.0 && x == x_played) found = true;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("support probabilities must sum to one");
  }
  if (!found) throw std::invalid_argument("played action not in support");
  return mean;
}

}  // namespace

DrState dr_update(DrState state, const std::vector<SupportPoint>& mu_support,
                  const Vector& x_played, double y) {
  const Vector mean =
      support_mean(mu_support, x_played, state.Gamma.rows());
  const Vector centered = x_played - mean;
  state.Gamma.noalias() += centered * centered.transpose();
  state.moment += centered * y;
  state.theta_dr = state.Gamma.llt().solve(state.moment);
  return state;
}

// -- SemiTS ------------------------------------------------------------------

DrState semits_update(DrState state,
                      const std::vector<SupportPoint>& mu_support,
                      const Vector& x_played, double y) {
  const Vector mean =
      support_mean(mu_support, x_played, state.Gamma.rows());
  const Vector centered = x_played - mean;
  state.Gamma.noalias() += centered * centered.transpose();
  for (const auto& [x, prob] : mu_support) {
    const Vector dev = x - mean;
    state.Gamma.noalias() += prob * dev * dev.transpose();
  }
  state.moment += 2.0 * centered * y;
  state.theta_dr = state.Gamma.llt().solve(state.moment);
  return state;
}

double semits_scale(long t, double delta) {
  return std::sqrt(2.0 * std::log(static_cast<double>(t) / delta));
}

SemiTsChoice semits_select(const DrState& state, const ActionSet& actions,
                           long t, double delta, Rng& rng, int num_samples) {
  if (t < 1) throw std::invalid_argument("semits_select: t must be >= 1");
  if (num_samples < 1) throw std::invalid_argument("need >= 1 sample");
  const double v = semits_scale(t, delta);
  const Eigen::Index dim = state.Gamma.rows();
  Eigen::LLT<Matrix> llt(state.Gamma);
  const auto upper = llt.matrixU();

  SemiTsChoice choice;
  choice.probabilities = Vector::Zero(actions.size());
  Vector eta(dim);
  for (int s = 0; s < num_samples; ++s) {
    for (Eigen::Index j = 0; j < dim; ++j) eta(j) = rng.normal();
    // L^-T eta = U^-1 eta has covariance Gamma^-1.
    const Vector sample = state.theta_dr + v * upper.solve(eta);
    const Vector scores = actions.points * sample;
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < scores.size(); ++i) {
      if (scores(i) > scores(best)) best = i;
    }
    if (s == 0) choice.index = best;
    choice.probabilities(best) += 1.0;
  }
  choice.probabilities /= static_cast<double>(num_samples);
  return choice;
}

// -- BOSE --------------------------------------------------------------------

double bose_beta(Eigen::Index dim, long t, double delta) {
  const double d = static_cast<double>(dim);
  const double td = static_cast<double>(t);
  return std::sqrt(d * std::log(1.0 + td / d) + 2.0 * std::log(td / delta)) +
         1.0;
}

double bose_design_objective(const Vector& mu, const Matrix& points,
                             const Matrix& gamma_inv) {
  const Vector mean = points.transpose() * mu;
  const Matrix centered = points.rowwise() - mean.transpose();
  return (centered * gamma_inv).cwiseProduct(centered).rowwise().sum().maxCoeff();
}

BoseDesign bose_design(const Matrix& points, const Matrix& gamma_inv,
                       int iterations, double step) {
  const Eigen::Index k = points.rows();
  BoseDesign best{Vector::Constant(k, 1.0 / static_cast<double>(k)), 0.0};
  best.objective = bose_design_objective(best.mu, points, gamma_inv);
  if (k == 1) return best;

  Vector mu = best.mu;
  Vector average = Vector::Zero(k);
  for (int it = 0; it < iterations; ++it) {
    const Vector mean = points.transpose() * mu;
    const Matrix centered = points.rowwise() - mean.transpose();
    const Vector values =
        (centered * gamma_inv).cwiseProduct(centered).rowwise().sum();
    Eigen::Index worst = 0;
    values.maxCoeff(&worst);
    if (values(worst) < best.objective) best = {mu, values(worst)};

    // d/d mu_j of the active term: -2 (x_worst - mean)^T Gamma^-1 x_j.
    Vector grad = -2.0 * points * (gamma_inv * centered.row(worst).transpose());
    grad.array() -= grad.mean();
    const double scale = grad.cwiseAbs().maxCoeff();
    if (!(scale > 0.0)) break;
    mu = mu.cwiseProduct((-step / scale * grad).array().exp().matrix());
    mu /= mu.sum();
    average += mu;
  }
  if (iterations > 0) {
    average /= average.sum();
    const double avg_obj = bose_design_objective(average, points, gamma_inv);
    if (avg_obj < best.objective) best = {average, avg_obj};
  }
  return best;
}

BoseState::BoseState(const ActionSet& actions, double lambda)
    : dr(actions.dim(), lambda) {
  survivors.resize(static_cast<std::size_t>(actions.size()));
  for (Eigen::Index i = 0; i < actions.size(); ++i) survivors[i] = i;
}

BoseChoice bose_select(BoseState& state, const ActionSet& actions, long t,
                       double delta, Rng& rng, int iterations, double step) {
  if (t < 1) throw std::invalid_argument("bose_select: t must be >= 1");
  const Matrix gamma_inv = state.dr.Gamma.inverse();
  const double width = 2.0 * bose_beta(actions.dim(), t, delta);
  const Vector& theta = state.dr.theta_dr;

  std::vector<Eigen::Index> kept;
  for (Eigen::Index x : state.survivors) {
    bool eliminated = false;
    for (Eigen::Index z : state.survivors) {
      if (z == x) continue;
      const Vector diff = actions.point(z) - actions.point(x);
      const double norm = std::sqrt(diff.dot(gamma_inv * diff));
      if (diff.dot(theta) > width * norm) {
        eliminated = true;
        break;
      }
    }
    if (!eliminated) kept.push_back(x);
  }
  if (kept.empty()) {
    std::cerr << "warning: BOSE eliminated every action; using the full set\n";
    kept.resize(static_cast<std::size_t>(actions.size()));
    for (Eigen::Index i = 0; i < actions.size(); ++i) kept[i] = i;
  }
  state.survivors = kept;

  Matrix pts(static_cast<Eigen::Index>(kept.size()), actions.dim());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    pts.row(static_cast<Eigen::Index>(i)) = actions.points.row(kept[i]);
  }
  const BoseDesign design = bose_design(pts, gamma_inv, iterations, step);

  BoseChoice choice;
  choice.survivors = kept;
  choice.probabilities = Vector::Zero(actions.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    choice.probabilities(kept[i]) = design.mu(static_cast<Eigen::Index>(i));
  }
  const double u = rng.uniform();
  double cumulative = 0.0;
  choice.index = kept.back();
  for (std::size_t i = 0; i < kept.size(); ++i) {
    cumulative += design.mu(static_cast<Eigen::Index>(i));
    if (u < cumulative) {
      choice.index = kept[i];
      break;
    }
  }
  return choice;
}

}  // namespace duelbo
