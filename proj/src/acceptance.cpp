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

#include "duelbo/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

#include "duelbo/baselines.hpp"
#include "duelbo/dueling_posterior.hpp"
#include "duelbo/harness.hpp"
#include "duelbo/ids.hpp"
#include "duelbo/reductions.hpp"

namespace duelbo {
namespace {

std::string fmt(const char* format, double a, double b = 0.0,
                double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

Vector random_point(int dim, Rng& rng) {
  Vector x(dim);
  for (int i = 0; i < dim; ++i) x(i) = rng.uniform();
  return x;
}

Vector random_unit(int dim, Rng& rng) {
  Vector x(dim);
  for (int i = 0; i < dim; ++i) x(i) = rng.normal();
  return x / x.norm();
}

// log det(I + K / lambda) through a pivoted LU, independent of the
// incremental factor.
double dense_log_det(const Matrix& gram, double lambda) {
  const Eigen::Index n = gram.rows();
  if (n == 0) return 0.0;
  Matrix a = Matrix::Identity(n, n) + gram / lambda;
  Eigen::PartialPivLU<Matrix> lu(a);
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    total += std::log(std::abs(lu.matrixLU()(i, i)));
  }
  return total;
}

// Posterior over an action set from a fresh dense solve.
struct DenseState {
  Vector means;
  Matrix cov;  // over actions
};

DenseState dense_state(const KernelSpec& kernel, double lambda,
                       const DuelingDataset& data, const ActionSet& actions) {
  const auto n = static_cast<Eigen::Index>(data.size());
  const Eigen::Index m = actions.size();
  Matrix gram(n, n);
  for (Eigen::Index s = 0; s < n; ++s) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto& [a1, a2] = data.pairs[s];
      const auto& [b1, b2] = data.pairs[r];
      gram(s, r) = kernel_eval(kernel, a1, b1) - kernel_eval(kernel, a1, b2) -
                   kernel_eval(kernel, a2, b1) + kernel_eval(kernel, a2, b2);
    }
  }
  Matrix feats(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Vector x = actions.point(i);
    for (Eigen::Index s = 0; s < n; ++s) {
      feats(i, s) = kernel_eval(kernel, x, data.pairs[s].first) -
                    kernel_eval(kernel, x, data.pairs[s].second);
    }
  }
  Matrix prior(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      prior(i, j) = kernel_eval(kernel, actions.point(i), actions.point(j));
    }
  }
  DenseState out;
  if (n == 0) {
    out.means = Vector::Zero(m);
    out.cov = prior;
    return out;
  }
  Vector d(n);
  for (Eigen::Index s = 0; s < n; ++s) d(s) = data.responses[s];
  Eigen::FullPivLU<Matrix> lu(gram + lambda * Matrix::Identity(n, n));
  out.means = feats * lu.solve(d);
  out.cov = prior - feats * lu.solve(Matrix(feats.transpose()));
  return out;
}

// Random RBF posterior over `m` actions in [0,1]^2 with `n` random duels.
ActionPosterior random_rbf_posterior(int m, int n, double lengthscale,
                                     Rng& rng) {
  Matrix pts(m, 2);
  for (int i = 0; i < m; ++i) pts.row(i) = random_point(2, rng).transpose();
  ActionPosterior post(KernelSpec::Rbf(lengthscale), 1.0, ActionSet(pts));
  for (int s = 0; s < n; ++s) {
    const auto i = static_cast<Eigen::Index>(rng.uniform_index(m));
    const auto j = static_cast<Eigen::Index>(rng.uniform_index(m));
    post.append(i, j, 2.0 * rng.normal());
  }
  return post;
}

// Per-seed traces for one policy, seeds base .. base + reps - 1.
std::vector<RegretTrace> run_traces(const ExperimentConfig& config, int jobs) {
  config.validate();
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
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return traces;
}

struct PairedStat {
  double mean = 0.0;
  double se2 = 0.0;
};

PairedStat paired(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  return {mean, 2.0 * sd / std::sqrt(n)};
}

double final_regret(const RegretTrace& t) { return t.cumulative.back(); }

double first_half(const RegretTrace& t) {
  return t.cumulative[t.cumulative.size() / 2 - 1];
}

double second_half(const RegretTrace& t) {
  return t.cumulative.back() - first_half(t);
}

// "lhs <= c rhs" per seed; rejected only if the mean paired excess is more
// than two standard errors above zero.
struct Claim {
  std::string text;
  bool passed = false;
};

Claim claim_le(const std::string& label,
               const std::vector<double>& lhs, double c,
               const std::vector<double>& rhs) {
  std::vector<double> diff(lhs.size());
  double ml = 0.0, mr = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    diff[i] = lhs[i] - c * rhs[i];
    ml += lhs[i];
    mr += rhs[i];
  }
  ml /= static_cast<double>(lhs.size());
  mr /= static_cast<double>(rhs.size());
  const PairedStat s = paired(diff);
  Claim out;
  out.passed = s.mean - s.se2 <= 0.0;
  out.text = label + fmt(" [%.1f vs %.3g*%.1f, diff %.1f", ml, c, mr, s.mean) +
             fmt("+-%.1f]", s.se2);
  return out;
}

std::vector<double> map_traces(const std::vector<RegretTrace>& traces,
                               double (*f)(const RegretTrace&)) {
  std::vector<double> out;
  for (const auto& t : traces) out.push_back(f(t));
  return out;
}

void combine(CriterionResult& r, const std::vector<Claim>& claims) {
  r.passed = true;
  for (const auto& c : claims) {
    r.passed = r.passed && c.passed;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += (c.passed ? "" : "FAIL ") + c.text;
  }
}

// ---------------------------------------------------------------------------

void criterion_dr_equivalence(CriterionResult& r) {
  double worst = 0.0;
  for (int ds = 0; ds < 50; ++ds) {
    Rng rng(1000 + ds, Stream::kTest);
    const int dim = 4;
    const int t = 1 + static_cast<int>(rng.uniform_index(100));
    const Vector theta = random_unit(dim, rng);
    DrState dr(dim, 1.0);
    DuelingPosterior duel(KernelSpec::Linear(), 2.0);
    std::vector<std::pair<Vector, Vector>> pairs;
    for (int s = 0; s < t; ++s) {
      const Vector x1 = random_unit(dim, rng);
      const Vector x2 = random_unit(dim, rng);
      const double y1 = theta.dot(x1) + rng.normal();
      const double y2 = theta.dot(x2) + rng.normal();
      const std::vector<SupportPoint> mu = {{x1, 0.5}, {x2, 0.5}};
      dr = dr_update(std::move(dr), mu, x1, y1);
      dr = dr_update(std::move(dr), mu, x2, y2);
      duel.append(x1, x2, y1 - y2);
      pairs.emplace_back(x1, x2);
    }
    for (const auto& [x1, x2] : pairs) {
      const double a = (x1 - x2).dot(dr.theta_dr);
      const double b = duel.mean(x1) - duel.mean(x2);
      worst = std::max(worst, std::abs(a - b));
    }
  }
  r.passed = worst <= 1e-8;
  r.detail = fmt("max |dr - dueling| = %.3g over 50 datasets", worst);
}

void criterion_telescoping(CriterionResult& r) {
  double worst = 0.0;
  for (int run = 0; run < 20; ++run) {
    Rng rng(2000 + run, Stream::kTest);
    DuelingPosterior post(KernelSpec::Rbf(0.3), 1.0);
    double sum = 0.0;
    for (int s = 0; s < 100; ++s) {
      const Vector x1 = random_point(2, rng);
      const Vector x2 = random_point(2, rng);
      sum += info_gain(post, x1, x2);
      post.append(x1, x2, rng.normal());
    }
    worst = std::max(worst, std::abs(sum - dense_log_det(post.gram(), 1.0)));
  }
  r.passed = worst <= 1e-8;
  r.detail = fmt("max |sum I_t - log det| = %.3g over 20 runs", worst);
}

ExperimentConfig linear_config(PolicyKind kind, BiasSchedule bias,
                               long horizon, int reps) {
  ExperimentConfig c;
  c.name = "linear";
  c.environment.objective = Objective::Kind::kLinear;
  c.environment.dim = 4;
  c.environment.num_actions = 20;
  c.environment.sigma = 1.0;
  c.environment.bias = bias;
  c.environment.horizon = horizon;
  c.policy.kind = kind;
  c.policy.kernel = KernelSpec::Linear();
  c.policy.lambda = 1.0;
  c.policy.delta = 0.05;
  if (kind == PolicyKind::kIdsOne) c.policy.c_max = 0.0;
  if (kind == PolicyKind::kIdsTwo) {
    c.policy.d_max = bias.kind == BiasSchedule::Kind::kDrift ? bias.rate : 0.0;
  }
  c.repetitions = reps;
  c.base_seed = 1;
  return c;
}

void criterion_ratio_bound(CriterionResult& r) {
  long rounds = 0, violations = 0, skipped = 0;
  double worst = 0.0;
  for (PolicyKind kind : {PolicyKind::kIdsOne, PolicyKind::kIdsTwo}) {
    for (int seed = 1; seed <= 10; ++seed) {
      const BiasSchedule none = BiasSchedule::None();
      const long steps = kind == PolicyKind::kIdsOne ? 500 : 1000;
      ExperimentConfig c = linear_config(kind, none, steps, 1);
      RunOptions opts;
      opts.ids_observer = [&](const IdsRoundInfo& info) {
        const IdsDecision& d = *info.decision;
        if (d.delta_t <= 0.0) return;
        ++rounds;
        if (d.greedy_fallback()) {
          ++skipped;
          return;
        }
        const double ratio =
            information_ratio(d.delta_t, d.gap_z, d.p, d.info_z);
        worst = std::max(worst, ratio / info.beta);
        if (ratio > 12.0 * info.beta) ++violations;
      };
      run_single(c, static_cast<std::uint64_t>(seed), opts);
    }
  }
  r.passed = violations == 0 && skipped == 0;
  r.detail = "rounds with delta_t>0: " + std::to_string(rounds) +
             ", violations: " + std::to_string(violations) +
             ", uninformative: " + std::to_string(skipped) +
             fmt(", max Psi/beta = %.3f", worst);
}

void criterion_gap_coverage(CriterionResult& r) {
  int runs_with_violation = 0;
  long checks = 0;
  for (int seed = 1; seed <= 100; ++seed) {
    ExperimentConfig c = linear_config(PolicyKind::kIdsTwo,
                                       BiasSchedule::None(), 1000, 1);
    const Objective objective =
        make_objective(c.environment, static_cast<std::uint64_t>(seed));
    bool violated = false;
    RunOptions opts;
    opts.ids_observer = [&](const IdsRoundInfo& info) {
      const GapState g = gap_estimates(*info.posterior, info.beta);
      for (Eigen::Index x = 0; x < g.gaps.size(); ++x) {
        ++checks;
        if (objective.true_gap(x) > 2.0 * g.gaps(x) + 1e-12) violated = true;
      }
    };
    run_single(c, static_cast<std::uint64_t>(seed), opts);
    if (violated) ++runs_with_violation;
  }
  const double frac = runs_with_violation / 100.0;
  r.passed = frac <= 0.10;
  r.detail = fmt("runs with a violation: %.2f (limit 0.10), ", frac) +
             std::to_string(checks) + " (x,t) checks";
}

double golden_min(double lo, double hi, double delta, double gap,
                  double info) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double p) {
    return std::pow((1.0 - p) * delta + p * gap, 2) / (p * info);
  };
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::min({f(a), f(b), f(0.5 * (a + b))});
}

void criterion_closed_form(CriterionResult& r) {
  double worst = 0.0;
  int compared = 0, grid_below = 0;
  for (int state = 0; state < 200; ++state) {
    Rng rng(5000 + state, Stream::kTest);
    const int m = 5 + static_cast<int>(rng.uniform_index(20));
    const int n = static_cast<int>(rng.uniform_index(40));
    const ActionPosterior post = random_rbf_posterior(m, n, 0.25, rng);
    const double beta_val = 0.1 + 4.0 * rng.uniform();
    const IdsDecision dec = ids_decide(post, beta_val);

    // Oracle from the generic posterior.
    const DuelingPosterior& gp = post.posterior();
    const ActionSet& acts = post.actions();
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < m; ++i) {
      if (gp.mean(acts.point(i)) > gp.mean(acts.point(best))) best = i;
    }
    const Vector xb = acts.point(best);
    double delta = -std::numeric_limits<double>::infinity();
    for (Eigen::Index z = 0; z < m; ++z) {
      const Vector xz = acts.point(z);
      delta = std::max(delta, gp.mean(xz) - gp.mean(xb) +
                                  std::sqrt(beta_val * gp.psi(xb, xz)));
    }
    if (delta <= 0.0) continue;
    double oracle = std::numeric_limits<double>::infinity();
    for (Eigen::Index z = 0; z < m; ++z) {
      const Vector xz = acts.point(z);
      const double info = std::log1p(gp.psi(xb, xz) / gp.lambda());
      if (info <= kMinInfoGain) continue;
      const double gap = delta + gp.mean(xb) - gp.mean(xz);
      double grid_best = std::numeric_limits<double>::infinity();
      int k_best = 1;
      for (int k = 1; k <= 100; ++k) {
        const double p = k / 100.0;
        const double v = std::pow((1.0 - p) * delta + p * gap, 2) / (p * info);
        if (v < grid_best) {
          grid_best = v;
          k_best = k;
        }
      }
      if (dec.objective > grid_best * (1.0 + 1e-12)) ++grid_below;
      const double lo = std::max(1e-12, (k_best - 1) / 100.0);
      const double hi = std::min(1.0, (k_best + 1) / 100.0);
      oracle = std::min({oracle, grid_best,
                         golden_min(lo, hi, delta, gap, info)});
    }
    if (!std::isfinite(oracle)) continue;
    ++compared;
    worst = std::max(worst, std::abs(dec.objective - oracle) / oracle);
  }
  r.passed = worst <= 1e-6 && grid_below == 0 && compared >= 150;
  r.detail = fmt("max rel error %.3g over ", worst) +
             std::to_string(compared) + " states, grid points beating closed "
             "form: " + std::to_string(grid_below);
}

void criterion_unbiased(CriterionResult& r) {
  constexpr int kDraws = 100000;
  double worst_z = 0.0;
  for (int triple = 0; triple < 10; ++triple) {
    Rng rng(6000 + triple, Stream::kTest);
    const double f1 = 2.0 * rng.uniform() - 1.0;
    const double f2 = 2.0 * rng.uniform() - 1.0;
    const double b = 4.0 * rng.uniform() - 2.0;
    const double sigma = 0.1 + 1.9 * rng.uniform();
    const Objective obj =
        Objective::Linear((Vector(2) << f1, f2).finished(),
                          ActionSet(Matrix::Identity(2, 2)));
    for (const auto kind : {ReductionKind::OnePoint(2.0),
                            ReductionKind::TwoPoint(0.0)}) {
      ConfoundedEnv env(obj, sigma, BiasSchedule::Constant(b),
                        static_cast<long>(kDraws) * kind.env_steps(),
                        Rng(6000 + triple, Stream::kNoise));
      Rng coin(6000 + triple, Stream::kCoin);
      const Vector x1 = obj.actions().point(0);
      const Vector x2 = obj.actions().point(1);
      double sum = 0.0, sq = 0.0;
      for (int i = 0; i < kDraws; ++i) {
        const double d = duel(kind, env, x1, x2, coin).d;
        sum += d;
        sq += d * d;
      }
      const double mean = sum / kDraws;
      const double var = (sq - kDraws * mean * mean) / (kDraws - 1);
      const double se = std::sqrt(var / kDraws);
      worst_z = std::max(worst_z, std::abs(mean - (f1 - f2)) / se);
    }
  }
  r.passed = worst_z <= 5.0;
  r.detail = fmt("max |mean - (f1-f2)| / SE = %.2f over 10 triples x 2 "
                 "reductions",
                 worst_z);
}

void criterion_figure1(CriterionResult& r, int jobs) {
  constexpr long kSteps = 2000;
  constexpr int kReps = 20;
  auto traces = [&](PolicyKind kind, const BiasSchedule& bias) {
    return run_traces(linear_config(kind, bias, kSteps, kReps), jobs);
  };
  std::vector<Claim> claims;
  {
    const auto lin = traces(PolicyKind::kLinUcb, BiasSchedule::None());
    const auto one = traces(PolicyKind::kIdsOne, BiasSchedule::None());
    const auto fl = map_traces(lin, final_regret);
    const auto fo = map_traces(one, final_regret);
    claims.push_back(claim_le("(a) LinUCB<=IDS-one", fl, 1.0, fo));
    claims.push_back(claim_le("(a) IDS-one<=2 LinUCB", fo, 2.0, fl));
  }
  {
    const BiasSchedule drift = BiasSchedule::Drift(0.1);
    const auto two = traces(PolicyKind::kIdsTwo, drift);
    const auto lin = traces(PolicyKind::kLinUcb, drift);
    const auto one = traces(PolicyKind::kIdsOne, drift);
    const auto ft = map_traces(two, final_regret);
    claims.push_back(claim_le("(b) IDS-two<=0.25 LinUCB", ft, 0.25,
                              map_traces(lin, final_regret)));
    claims.push_back(claim_le("(b) IDS-two<=0.25 IDS-one", ft, 0.25,
                              map_traces(one, final_regret)));
    claims.push_back(claim_le("(b) IDS-two 2nd half<=0.5 1st half",
                              map_traces(two, second_half), 0.5,
                              map_traces(two, first_half)));
  }
  {
    const BiasSchedule rep = BiasSchedule::NegativeRepeat();
    const auto fl = map_traces(traces(PolicyKind::kLinUcb, rep), final_regret);
    claims.push_back(claim_le(
        "(c) IDS-one<=0.5 LinUCB",
        map_traces(traces(PolicyKind::kIdsOne, rep), final_regret), 0.5, fl));
    claims.push_back(claim_le(
        "(c) IDS-two<=0.5 LinUCB",
        map_traces(traces(PolicyKind::kIdsTwo, rep), final_regret), 0.5, fl));
    claims.push_back(claim_le(
        "(c) SemiTS<=0.5 LinUCB",
        map_traces(traces(PolicyKind::kSemiTs, rep), final_regret), 0.5, fl));
  }
  combine(r, claims);
}

ExperimentConfig camelback_config(PolicyKind kind, BiasSchedule bias) {
  ExperimentConfig c;
  c.name = "camelback";
  c.environment.objective = Objective::Kind::kCamelback;
  c.environment.grid = 30;
  c.environment.sigma = std::sqrt(0.1);
  c.environment.bias = bias;
  c.environment.horizon = 1000;
  c.policy.kind = kind;
  c.policy.kernel = KernelSpec::Rbf(0.2);
  c.policy.lambda = 1.0;
  c.policy.ucb_beta = 1.0;
  if (kind != PolicyKind::kGpUcb) c.policy.beta_fixed = 1.0;
  if (kind == PolicyKind::kIdsOne) c.policy.c_max = 0.0;
  if (kind == PolicyKind::kIdsTwo) c.policy.d_max = 0.3;
  c.repetitions = 20;
  c.base_seed = 1;
  return c;
}

void criterion_figure2(CriterionResult& r, int jobs) {
  std::vector<Claim> claims;
  {
    const BiasSchedule periodic = BiasSchedule::PeriodicDrift();
    const auto two = run_traces(camelback_config(PolicyKind::kIdsTwo,
                                                 periodic), jobs);
    claims.push_back(claim_le("periodic IDS-two 2nd half<=0.5 1st half",
                              map_traces(two, second_half), 0.5,
                              map_traces(two, first_half)));
    for (PolicyKind kind : {PolicyKind::kGpUcb, PolicyKind::kIdsOne}) {
      const auto t = run_traces(camelback_config(kind, periodic), jobs);
      claims.push_back(claim_le("periodic " + to_string(kind) +
                                    " 0.8 1st half<=2nd half",
                                map_traces(t, first_half), 1.25,
                                map_traces(t, second_half)));
    }
  }
  {
    const BiasSchedule calib = BiasSchedule::Calibration();
    const auto fg = map_traces(
        run_traces(camelback_config(PolicyKind::kGpUcb, calib), jobs),
        final_regret);
    const auto ft = map_traces(
        run_traces(camelback_config(PolicyKind::kIdsTwo, calib), jobs),
        final_regret);
    claims.push_back(claim_le("calibration GPUCB<=2 IDS-two", fg, 2.0, ft));
    claims.push_back(claim_le("calibration IDS-two<=2 GPUCB", ft, 2.0, fg));
  }
  combine(r, claims);
}

void criterion_kernel_suite(CriterionResult& r) {
  double mean_err = 0.0, psi_err = 0.0, min_eig = 0.0;
  double psi_lo = 0.0, psi_hi = 0.0;
  int beta_drops = 0;
  const ConfidenceParams conf{1.0, 1.0, 0.05};
  for (int run = 0; run < 30; ++run) {
    Rng rng(9000 + run, Stream::kTest);
    const bool linear = run % 2 == 0;
    const int m = 12;
    Matrix pts(m, 3);
    for (int i = 0; i < m; ++i) {
      pts.row(i) = (linear ? random_unit(3, rng) : random_point(3, rng))
                       .transpose();
    }
    const KernelSpec kernel =
        linear ? KernelSpec::Linear() : KernelSpec::Rbf(0.4);
    ActionPosterior post(kernel, 1.0, ActionSet(pts));
    double last_beta = post.beta(conf);
    for (int s = 0; s < 60; ++s) {
      post.append(static_cast<Eigen::Index>(rng.uniform_index(m)),
                  static_cast<Eigen::Index>(rng.uniform_index(m)),
                  rng.normal());
      const double b = post.beta(conf);
      if (b < last_beta - 1e-12) ++beta_drops;
      last_beta = b;
      if (s % 10 != 9) continue;
      const DenseState dense = dense_state(kernel, 1.0, post.posterior().data(),
                                           post.actions());
      mean_err = std::max(mean_err,
                          (post.means() - dense.means).cwiseAbs().maxCoeff());
      for (Eigen::Index i = 0; i < m; ++i) {
        const Vector row = post.psi_from(i);
        for (Eigen::Index j = 0; j < m; ++j) {
          const double want = dense.cov(i, i) + dense.cov(j, j) -
                              2.0 * dense.cov(i, j);
          psi_err = std::max(psi_err, std::abs(row(j) - std::max(0.0, want)));
          psi_lo = std::min(psi_lo, row(j));
          psi_hi = std::max(psi_hi, row(j));
        }
      }
      Eigen::SelfAdjointEigenSolver<Matrix> cov_eig(dense.cov);
      Eigen::SelfAdjointEigenSolver<Matrix> gram_eig(post.posterior().gram());
      min_eig = std::min({min_eig, cov_eig.eigenvalues().minCoeff(),
                          gram_eig.eigenvalues().minCoeff()});
    }
  }
  r.passed = mean_err <= 1e-8 && psi_err <= 1e-8 && min_eig >= -1e-9 &&
             psi_lo >= 0.0 && psi_hi <= 4.0 && beta_drops == 0;
  r.detail = fmt("mean err %.2g, psi err %.2g, min eigenvalue %.2g, ",
                 mean_err, psi_err, min_eig) +
             fmt("psi in [%.3g, %.3g], beta decreases: ", psi_lo, psi_hi) +
             std::to_string(beta_drops);
}

struct Entry {
  int id;
  const char* name;
  void (*run)(CriterionResult&, int);
};

const Entry kEntries[] = {
    {1, "dr-dueling-equivalence",
     [](CriterionResult& r, int) { criterion_dr_equivalence(r); }},
    {2, "telescoping-info-gain",
     [](CriterionResult& r, int) { criterion_telescoping(r); }},
    {3, "information-ratio-bound",
     [](CriterionResult& r, int) { criterion_ratio_bound(r); }},
    {4, "gap-estimate-coverage",
     [](CriterionResult& r, int) { criterion_gap_coverage(r); }},
    {5, "closed-form-tradeoff",
     [](CriterionResult& r, int) { criterion_closed_form(r); }},
    {6, "reduction-unbiasedness",
     [](CriterionResult& r, int) { criterion_unbiased(r); }},
    {7, "linear-bias-ordering", criterion_figure1},
    {8, "camelback-bias-ordering", criterion_figure2},
    {9, "kernel-numerics",
     [](CriterionResult& r, int) { criterion_kernel_suite(r); }},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  for (const Entry& e : kEntries) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), e.id) ==
            options.only.end()) {
      continue;
    }
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(r, std::max(1, options.jobs));
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result(const CriterionResult& result) {
  std::ostringstream os;
  os << (result.passed ? "PASS" : "FAIL") << " [" << result.id << "] "
     << result.name << " (" << fmt("%.1fs", result.seconds) << "): "
     << result.detail;
  return os.str();
}

}  // namespace duelbo
