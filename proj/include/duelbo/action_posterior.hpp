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

#ifndef DUELBO_ACTION_POSTERIOR_HPP_
#define DUELBO_ACTION_POSTERIOR_HPP_

#include <cstdint>

#include "duelbo/dueling_posterior.hpp"

namespace duelbo {

// Finite, ordered action set; one action per row of `points`.
struct ActionSet {
  Matrix points;

  ActionSet() = default;
  explicit ActionSet(Matrix pts);

  Eigen::Index size() const { return points.rows(); }
  Eigen::Index dim() const { return points.cols(); }
  Vector point(Eigen::Index i) const { return points.row(i).transpose(); }
};

// DuelingPosterior restricted to a fixed action set. Whitened features of
// every action are cached and extended by one column per append, so means
// and psi against a fixed anchor cost O(t |X|) per round instead of
// O(t^2 |X|).
class ActionPosterior {
 public:
  // Throws std::invalid_argument for an empty action set, a dimension that
  // disagrees with existing data, or (linear kernel) an action with norm
  // above one.
  ActionPosterior(DuelingPosterior posterior, ActionSet actions);
  ActionPosterior(const KernelSpec& kernel, double lambda, ActionSet actions)
      : ActionPosterior(DuelingPosterior(kernel, lambda), std::move(actions)) {}

  const DuelingPosterior& posterior() const { return post_; }
  const ActionSet& actions() const { return actions_; }
  Eigen::Index num_actions() const { return actions_.size(); }
  std::size_t num_observations() const { return post_.size(); }

  void append(Eigen::Index first, Eigen::Index second, double d);

  const Vector& means() const { return means_; }
  double mean(Eigen::Index i) const { return means_(i); }

  // psi_t(anchor, z) for every action z.
  Vector psi_from(Eigen::Index anchor) const;
  double psi(Eigen::Index i, Eigen::Index j) const;

  // log(1 + psi_t(anchor, z) / lambda) for every action z.
  Vector info_gain_from(Eigen::Index anchor) const;

  double log_det() const { return post_.log_det(); }
  double beta(const ConfidenceParams& conf) const {
    return duelbo::beta(post_, conf);
  }

 private:
  void recompute_cache();

  DuelingPosterior post_;
  ActionSet actions_;
  Matrix gram_;          // prior kernel over actions
  Matrix white_;         // |X| x capacity; column s is L^{-1} k_t(.) entry s
  Vector white_sq_;      // squared row norms of white_
  Vector means_;
  std::uint64_t generation_ = 0;
};

}  // namespace duelbo

#endif  // DUELBO_ACTION_POSTERIOR_HPP_
