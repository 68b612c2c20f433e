// Copyright 2026 The mbdopt Authors
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

#include "mbd/baselines.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "mbd/error.h"
#include "mbd/parallel.h"

namespace mbd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int resolve_top_k(const CemConfig& config) {
  int k = config.top_k > 0 ? config.top_k
                           : std::max(1, config.n_samples / 10);
  if (k > config.n_samples) {
    throw Error(ErrorCode::kInvalidArgument,
                "top_k exceeds the sample count");
  }
  return k;
}

void check_cem(const CemConfig& config) {
  if (config.n_iters < 1 || config.n_samples < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "n_iters and n_samples must be >= 1");
  }
  if (!(config.init_std > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "init_std must be positive");
  }
  if (config.elite_mode == EliteMode::kSoftmax &&
      !(config.temperature > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "temperature must be positive");
  }
  if (config.smoothing < 0.0 || config.smoothing > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "smoothing must be in [0, 1]");
  }
}

Eigen::VectorXd initial_mean(const CemConfig& config, int d) {
  if (config.init_mean.size() == 0) return Eigen::VectorXd::Zero(d);
  if (config.init_mean.size() != d) {
    throw Error(ErrorCode::kInvalidArgument,
                "init_mean dimension does not match the problem");
  }
  return config.init_mean;
}

// in-place elite update shared by both run_cem overloads; costs rank the
// batch, candidates live in normalized coordinates
struct CemUpdate {
  Eigen::VectorXd mean;
  Eigen::VectorXd std;
  double ess;
};

CemUpdate cem_update(const CemConfig& config, const Eigen::MatrixXd& candidates,
                     const Eigen::VectorXd& rank_costs,
                     const Eigen::VectorXd& log_weights,
                     const Eigen::VectorXd& std_prev) {
  CemUpdate update;
  if (config.elite_mode == EliteMode::kSoftmax) {
    WeightedMean wm = weighted_mean(candidates, log_weights);
    update.mean = wm.y_bar;
    update.std = std_prev;
    update.ess = wm.ess;
    return update;
  }

  int k = resolve_top_k(config);
  std::vector<int> order(candidates.rows());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](int a, int b) { return rank_costs[a] < rank_costs[b]; });

  Eigen::VectorXd elite_mean = Eigen::VectorXd::Zero(candidates.cols());
  for (int e = 0; e < k; ++e) elite_mean += candidates.row(order[e]).transpose();
  elite_mean /= k;

  Eigen::VectorXd elite_var = Eigen::VectorXd::Zero(candidates.cols());
  for (int e = 0; e < k; ++e) {
    Eigen::VectorXd diff = candidates.row(order[e]).transpose() - elite_mean;
    elite_var += diff.cwiseProduct(diff);
  }
  elite_var /= k;

  update.mean = elite_mean;
  update.std = config.smoothing * std_prev +
               (1.0 - config.smoothing) * elite_var.cwiseSqrt();
  update.ess = k;
  return update;
}

}  // namespace

MbdResult run_cem(const ObjectiveProblem& problem, const CemConfig& config) {
  check_cem(config);
  if (config.elite_mode == EliteMode::kTopk) resolve_top_k(config);

  int d = problem.dimension;
  Eigen::VectorXd mean = initial_mean(config, d);
  Eigen::VectorXd std = Eigen::VectorXd::Constant(d, config.init_std);

  DiffusionTrace trace;
  trace.records.reserve(config.n_iters);

  for (int j = 1; j <= config.n_iters; ++j) {
    Eigen::MatrixXd candidates = gaussian_candidates(
        mean, std, config.n_samples, config.seed,
        static_cast<std::uint64_t>(j));
    Eigen::VectorXd costs =
        evaluate_unit_batch(problem, candidates, config.n_workers);

    int best_in_batch = 0;
    double batch_min = costs.minCoeff(&best_in_batch);
    if (batch_min < trace.best_cost) {
      trace.best_cost = batch_min;
      trace.best_y = problem.map_to_box(candidates.row(best_in_batch)
                                            .transpose()
                                            .cwiseMax(-1.0)
                                            .cwiseMin(1.0));
    }

    CemUpdate update =
        cem_update(config, candidates, costs, -costs / config.temperature, std);
    trace.records.push_back(TraceRecord{j, mean, update.mean, trace.best_cost,
                                        costs.mean(), update.ess});
    mean = std::move(update.mean);
    std = std::move(update.std);
  }

  MbdResult result;
  result.solution = problem.map_to_box(mean.cwiseMax(-1.0).cwiseMin(1.0));
  result.final_cost = problem.cost(result.solution);
  result.trace = std::move(trace);
  return result;
}

TrajOptResult run_cem(const TaskSpec& task, const CemConfig& config) {
  check_cem(config);
  if (config.elite_mode == EliteMode::kTopk) resolve_top_k(config);
  double kappa = 10.0 / config.temperature;

  int d = task.horizon * task.model.n_u;
  Eigen::VectorXd mean = initial_mean(config, d);
  Eigen::VectorXd std = Eigen::VectorXd::Constant(d, config.init_std);

  TrajOptResult result;
  result.trace.records.reserve(config.n_iters);
  Trajectory best;
  best.total_cost = kInf;
  best.constraint_violation = kInf;

  auto consider = [&](const Trajectory& traj) {
    if (trajectory_improves(traj, best)) {
      best = traj;
      result.found_feasible = traj.constraint_violation == 0.0;
    }
  };
  auto track = [&](double cost, const Eigen::MatrixXd& candidates, int k) {
    if (cost < result.trace.best_cost) {
      result.trace.best_cost = cost;
      result.trace.best_y =
          candidates.row(k).transpose().cwiseMax(-1.0).cwiseMin(1.0);
    }
  };

  std::vector<Trajectory> rollouts(config.n_samples);
  for (int j = 1; j <= config.n_iters; ++j) {
    Eigen::MatrixXd candidates = gaussian_candidates(
        mean, std, config.n_samples, config.seed,
        static_cast<std::uint64_t>(j));
    parallel_for(config.n_samples, config.n_workers, [&](int k) {
      rollouts[k] =
          rollout(task, controls_from_unit(task, candidates.row(k).transpose()));
    });

    Eigen::VectorXd costs(config.n_samples);
    Eigen::VectorXd rank_costs(config.n_samples);
    Eigen::VectorXd log_weights(config.n_samples);
    for (int k = 0; k < config.n_samples; ++k) {
      costs[k] = rollouts[k].total_cost;
      log_weights[k] = traj_log_weight(rollouts[k], config.temperature,
                                       ConstraintMode::kPenalty, kappa);
      rank_costs[k] = -config.temperature * log_weights[k];
      track(costs[k], candidates, k);
      consider(rollouts[k]);
    }

    CemUpdate update = cem_update(config, candidates, rank_costs, log_weights, std);
    result.trace.records.push_back(TraceRecord{
        j, mean, update.mean, result.trace.best_cost, costs.mean(), update.ess});
    mean = std::move(update.mean);
    std = std::move(update.std);
  }

  Eigen::VectorXd final_unit = mean.cwiseMax(-1.0).cwiseMin(1.0);
  result.solution = rollout(task, controls_from_unit(task, final_unit));
  consider(result.solution);
  result.best = std::move(best);
  return result;
}

TrajOptResult run_mppi(const TaskSpec& task, const MppiConfig& config) {
  if (config.n_iters < 1 || config.n_samples < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "n_iters and n_samples must be >= 1");
  }
  if (!(config.temperature > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "temperature must be positive");
  }
  if (config.noise_std < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "noise_std must be >= 0");
  }
  double kappa = 10.0 / config.temperature;

  int d = task.horizon * task.model.n_u;
  Eigen::VectorXd nominal = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd noise = Eigen::VectorXd::Constant(d, config.noise_std);

  TrajOptResult result;
  result.trace.records.reserve(config.n_iters);
  Trajectory best;
  best.total_cost = kInf;
  best.constraint_violation = kInf;

  auto consider = [&](const Trajectory& traj) {
    if (trajectory_improves(traj, best)) {
      best = traj;
      result.found_feasible = traj.constraint_violation == 0.0;
    }
  };
  auto track = [&](double cost, const Eigen::MatrixXd& candidates, int k) {
    if (cost < result.trace.best_cost) {
      result.trace.best_cost = cost;
      result.trace.best_y =
          candidates.row(k).transpose().cwiseMax(-1.0).cwiseMin(1.0);
    }
  };

  std::vector<Trajectory> rollouts(config.n_samples);
  for (int j = 1; j <= config.n_iters; ++j) {
    Eigen::MatrixXd candidates = gaussian_candidates(
        nominal, noise, config.n_samples, config.seed,
        static_cast<std::uint64_t>(j));
    parallel_for(config.n_samples, config.n_workers, [&](int k) {
      rollouts[k] =
          rollout(task, controls_from_unit(task, candidates.row(k).transpose()));
    });

    Eigen::VectorXd costs(config.n_samples);
    Eigen::VectorXd log_weights(config.n_samples);
    for (int k = 0; k < config.n_samples; ++k) {
      costs[k] = rollouts[k].total_cost;
      log_weights[k] = traj_log_weight(rollouts[k], config.temperature,
                                       ConstraintMode::kPenalty, kappa);
      track(costs[k], candidates, k);
      consider(rollouts[k]);
    }

    WeightedMean wm = weighted_mean(candidates, log_weights);
    result.trace.records.push_back(TraceRecord{
        j, nominal, wm.y_bar, result.trace.best_cost, costs.mean(), wm.ess});
    nominal = wm.y_bar;
  }

  Eigen::VectorXd final_unit = nominal.cwiseMax(-1.0).cwiseMin(1.0);
  result.solution = rollout(task, controls_from_unit(task, final_unit));
  consider(result.solution);
  result.best = std::move(best);
  return result;
}

}  // namespace mbd
