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

#include "mbd/trajopt.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "mbd/error.h"
#include "mbd/parallel.h"
#include "mbd/rng.h"

namespace mbd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

bool trajectory_improves(const Trajectory& a, const Trajectory& b) {
  bool a_feasible = a.constraint_violation == 0.0;
  bool b_feasible = b.constraint_violation == 0.0;
  if (a_feasible != b_feasible) return a_feasible;
  if (a_feasible) return a.total_cost < b.total_cost;
  if (a.constraint_violation != b.constraint_violation) {
    return a.constraint_violation < b.constraint_violation;
  }
  return a.total_cost < b.total_cost;
}

double traj_log_weight(const Trajectory& traj, double temperature,
                       ConstraintMode mode, double kappa) {
  double log_weight = -traj.total_cost / temperature;
  if (traj.constraint_violation > 0.0) {
    if (mode == ConstraintMode::kHard) return -kInf;
    log_weight -= kappa * traj.constraint_violation;
  }
  return log_weight;
}

Eigen::MatrixXd controls_from_unit(const TaskSpec& task,
                                   const Eigen::VectorXd& flat_unit) {
  int T = task.horizon;
  int n_u = task.model.n_u;
  if (flat_unit.size() != static_cast<Eigen::Index>(T) * n_u) {
    throw Error(ErrorCode::kInvalidArgument,
                "flat control vector has wrong length");
  }
  Eigen::MatrixXd controls(T, n_u);
  for (int t = 0; t < T; ++t) {
    for (int j = 0; j < n_u; ++j) {
      double unit = std::clamp(flat_unit[t * n_u + j], -1.0, 1.0);
      controls(t, j) = task.model.u_lower[j] +
                       0.5 * (unit + 1.0) *
                           (task.model.u_upper[j] - task.model.u_lower[j]);
    }
  }
  return controls;
}

TrajOptResult run_mbd_trajopt(const TaskSpec& task, const TrajOptConfig& config,
                              const Demonstration* demo) {
  if (config.n_samples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_samples must be >= 1");
  }
  if (!(config.temperature > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "temperature must be positive");
  }
  int n_steps = config.schedule.n_steps();
  if (n_steps < 1) {
    throw Error(ErrorCode::kInvalidArgument, "schedule has no steps");
  }
  if (demo != nullptr &&
      (demo->values.rows() != task.horizon ||
       demo->values.cols() != task.model.n_x)) {
    throw Error(ErrorCode::kInvalidArgument,
                "demonstration shape does not match the task");
  }
  double kappa = config.penalty_kappa > 0.0 ? config.penalty_kappa
                                            : 10.0 / config.temperature;

  int d = task.horizon * task.model.n_u;
  RandomStream init_rng(config.seed, 0);
  Eigen::VectorXd y(d);
  for (int j = 0; j < d; ++j) y[j] = init_rng.gaussian();

  TrajOptResult result;
  result.trace.records.reserve(n_steps);
  Trajectory best;
  best.total_cost = kInf;
  best.constraint_violation = kInf;

  auto consider = [&](const Trajectory& traj) {
    if (trajectory_improves(traj, best)) {
      best = traj;
      result.found_feasible = traj.constraint_violation == 0.0;
    }
  };

  std::vector<Trajectory> rollouts(config.n_samples);
  for (int i = n_steps; i >= 1; --i) {
    Eigen::MatrixXd candidates =
        sample_candidates(y, config.schedule, i, config.index_convention,
                          config.n_samples, config.seed);
    parallel_for(config.n_samples, config.n_workers, [&](int k) {
      Eigen::VectorXd unit = candidates.row(k).transpose();
      rollouts[k] = rollout(task, controls_from_unit(task, unit));
    });

    Eigen::VectorXd log_weights(config.n_samples);
    auto weigh = [&](ConstraintMode mode) {
      for (int k = 0; k < config.n_samples; ++k) {
        log_weights[k] =
            demo != nullptr ? mixed_log_weight(rollouts[k], *demo,
                                               config.temperature, mode, kappa)
                            : traj_log_weight(rollouts[k], config.temperature,
                                              mode, kappa);
      }
    };
    weigh(config.constraint_mode);
    if (config.constraint_mode == ConstraintMode::kHard &&
        log_weights.maxCoeff() == -kInf) {
      // whole batch infeasible: soften this step so denoising can continue
      weigh(ConstraintMode::kPenalty);
    }

    Eigen::VectorXd costs(config.n_samples);
    for (int k = 0; k < config.n_samples; ++k) {
      costs[k] = rollouts[k].total_cost;
      if (costs[k] < result.trace.best_cost) {
        result.trace.best_cost = costs[k];
        result.trace.best_y =
            candidates.row(k).transpose().cwiseMax(-1.0).cwiseMin(1.0);
      }
      consider(rollouts[k]);
    }

    WeightedMean wm = weighted_mean(candidates, log_weights);
    Eigen::VectorXd score = estimate_score(y, wm.y_bar, config.schedule, i);

    result.trace.records.push_back(TraceRecord{
        i, y, wm.y_bar, result.trace.best_cost, costs.mean(), wm.ess});

    y = config.backward_kind == BackwardKind::kMcsa
            ? mcsa_step(y, score, config.schedule, i)
            : reverse_sde_step(y, score, config.schedule, i, config.seed);
  }

  Eigen::VectorXd final_unit = y.cwiseMax(-1.0).cwiseMin(1.0);
  result.solution = rollout(task, controls_from_unit(task, final_unit));
  consider(result.solution);
  result.best = std::move(best);
  return result;
}

}  // namespace mbd
