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

#ifndef MBD_DEMOS_H_
#define MBD_DEMOS_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mbd/dynamics.h"

namespace mbd {

enum class ConstraintMode {
  kHard,     // infeasible candidates are rejected outright (-inf weight)
  kPenalty,  // violations subtract kappa * violation from the log weight
};

// Reference trajectory for steering a sampler, possibly observed only on a
// subset of state entries (mask) and possibly infeasible itself. values and
// mask are T x n_x; unobserved entries of values are zero and ignored.
// sigma is the likelihood noise scale in normalized state units; one unit of
// dimension j spans state_scale[j] raw units.
struct Demonstration {
  Eigen::MatrixXd values;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> mask;
  double sigma = 0.1;
  Eigen::VectorXd state_scale;
  double demo_cost = 0.0;
  double demo_violation = 0.0;
};

// Log weight a trajectory earns through the demonstration channel:
// Gaussian log-likelihood of the masked state entries around the demo,
// plus the demo's own optimality and feasibility terms (same dropped
// constants as the model weight, so the two are comparable under max).
double demo_log_weight(const Trajectory& traj, const Demonstration& demo,
                       double temperature, ConstraintMode mode, double kappa);

// max of the model weight and the demonstration weight; realizes a per
// sample binary switch between the two channels
double mixed_log_weight(const Trajectory& traj, const Demonstration& demo,
                        double temperature, ConstraintMode mode, double kappa);

struct RrtConfig {
  double max_step = 0.2;
  int max_iters = 1000;
  double goal_bias = 0.05;
  std::uint64_t seed = 0;
};

// Rapidly exploring random tree over the free workspace. Returns a polyline
// from start to the goal (or a tree node within max_step of it when the
// final connection is blocked) whose segments avoid every forbidden rect.
// Throws NO_PATH_FOUND after max_iters without reaching the goal region.
std::vector<Eigen::Vector2d> rrt_plan(const Eigen::Vector2d& start,
                                      const Eigen::Vector2d& goal,
                                      const std::vector<Rect>& forbidden,
                                      const Rect& workspace,
                                      const RrtConfig& config = {});

// true when the closed segment a-b touches the rect
bool segment_hits_rect(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                       const Rect& rect);

// Arc-length resample of a planar path into a horizon-length partial-state
// demonstration for the task: the first two state dimensions are observed,
// everything else is masked out. demo_cost evaluates the task cost on the
// masked entries (unobservable terms contribute zero); demo_violation is
// the geometric constraint violation of the waypoints.
Demonstration path_to_demonstration(const std::vector<Eigen::Vector2d>& path,
                                    const TaskSpec& task, double sigma = 0.1);

}  // namespace mbd

#endif  // MBD_DEMOS_H_
