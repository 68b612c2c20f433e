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

#include "mbd/demos.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mbd/error.h"
#include "mbd/rng.h"
#include "mbd/trajopt.h"

namespace mbd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool point_in_rect(const Eigen::Vector2d& p, const Rect& r) {
  return p.x() >= r.x_min && p.x() <= r.x_max && p.y() >= r.y_min &&
         p.y() <= r.y_max;
}

bool segment_free(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                  const std::vector<Rect>& forbidden) {
  for (const Rect& r : forbidden) {
    if (segment_hits_rect(a, b, r)) return false;
  }
  return true;
}

}  // namespace

double demo_log_weight(const Trajectory& traj, const Demonstration& demo,
                       double temperature, ConstraintMode mode, double kappa) {
  if (traj.states.rows() != demo.values.rows() ||
      traj.states.cols() != demo.values.cols()) {
    throw Error(ErrorCode::kInvalidArgument,
                "trajectory and demonstration shapes differ");
  }

  double log_weight = 0.0;
  for (Eigen::Index t = 0; t < demo.values.rows(); ++t) {
    for (Eigen::Index j = 0; j < demo.values.cols(); ++j) {
      if (!demo.mask(t, j)) continue;
      double scale = demo.state_scale.size() > j ? demo.state_scale[j] : 1.0;
      double z = (traj.states(t, j) - demo.values(t, j)) / (demo.sigma * scale);
      log_weight -= 0.5 * z * z;
    }
  }
  log_weight -= demo.demo_cost / temperature;
  if (demo.demo_violation > 0.0) {
    if (mode == ConstraintMode::kHard) return -kInf;
    log_weight -= kappa * demo.demo_violation;
  }
  return log_weight;
}

double mixed_log_weight(const Trajectory& traj, const Demonstration& demo,
                        double temperature, ConstraintMode mode,
                        double kappa) {
  return std::max(traj_log_weight(traj, temperature, mode, kappa),
                  demo_log_weight(traj, demo, temperature, mode, kappa));
}

bool segment_hits_rect(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                       const Rect& rect) {
  // slab clipping of the parametric segment a + t (b - a), t in [0, 1]
  double t0 = 0.0;
  double t1 = 1.0;
  double d[2] = {b.x() - a.x(), b.y() - a.y()};
  double lo[2] = {rect.x_min, rect.y_min};
  double hi[2] = {rect.x_max, rect.y_max};
  double p[2] = {a.x(), a.y()};
  for (int axis = 0; axis < 2; ++axis) {
    if (d[axis] == 0.0) {
      if (p[axis] < lo[axis] || p[axis] > hi[axis]) return false;
      continue;
    }
    double ta = (lo[axis] - p[axis]) / d[axis];
    double tb = (hi[axis] - p[axis]) / d[axis];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

std::vector<Eigen::Vector2d> rrt_plan(const Eigen::Vector2d& start,
                                      const Eigen::Vector2d& goal,
                                      const std::vector<Rect>& forbidden,
                                      const Rect& workspace,
                                      const RrtConfig& config) {
  if (!(config.max_step > 0.0) || config.max_iters < 1 ||
      config.goal_bias < 0.0 || config.goal_bias > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "bad rrt configuration");
  }
  for (const Rect& r : forbidden) {
    if (point_in_rect(start, r) || point_in_rect(goal, r)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "start or goal inside a forbidden rect");
    }
  }

  struct Node {
    Eigen::Vector2d point;
    int parent;
  };
  std::vector<Node> tree;
  tree.push_back({start, -1});

  RandomStream rng(config.seed, 0);
  int reached = (start - goal).norm() <= config.max_step ? 0 : -1;
  for (int iter = 0; iter < config.max_iters && reached < 0; ++iter) {
    Eigen::Vector2d sample;
    if (rng.uniform() < config.goal_bias) {
      sample = goal;
    } else {
      sample.x() =
          workspace.x_min + rng.uniform() * (workspace.x_max - workspace.x_min);
      sample.y() =
          workspace.y_min + rng.uniform() * (workspace.y_max - workspace.y_min);
    }

    int nearest = 0;
    double best_sq = kInf;
    for (int k = 0; k < static_cast<int>(tree.size()); ++k) {
      double sq = (tree[k].point - sample).squaredNorm();
      if (sq < best_sq) {
        best_sq = sq;
        nearest = k;
      }
    }

    Eigen::Vector2d from = tree[nearest].point;
    Eigen::Vector2d delta = sample - from;
    double dist = delta.norm();
    if (dist < 1e-12) continue;
    Eigen::Vector2d next =
        from + delta * (std::min(config.max_step, dist) / dist);
    if (!segment_free(from, next, forbidden)) continue;

    tree.push_back({next, nearest});
    if ((next - goal).norm() <= config.max_step) {
      reached = static_cast<int>(tree.size()) - 1;
    }
  }

  if (reached < 0) {
    throw Error(ErrorCode::kNoPathFound,
                "no path after " + std::to_string(config.max_iters) +
                    " iterations");
  }

  std::vector<Eigen::Vector2d> path;
  for (int k = reached; k >= 0; k = tree[k].parent) {
    path.push_back(tree[k].point);
  }
  std::reverse(path.begin(), path.end());
  if (segment_free(path.back(), goal, forbidden) &&
      (path.back() - goal).norm() > 0.0) {
    path.push_back(goal);
  }
  return path;
}

Demonstration path_to_demonstration(const std::vector<Eigen::Vector2d>& path,
                                    const TaskSpec& task, double sigma) {
  int T = task.horizon;
  if (path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty path");
  }
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  }
  if (task.model.n_x < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "task state must have at least two planar dimensions");
  }

  std::vector<Eigen::Vector2d> waypoints;
  waypoints.reserve(T);
  if (static_cast<int>(path.size()) == T) {
    waypoints = path;  // already horizon-shaped: keep it bit-exact
  } else if (path.size() == 1) {
    waypoints.assign(T, path[0]);
  } else {
    // arc-length parameterization
    std::vector<double> cumulative(path.size(), 0.0);
    for (std::size_t k = 1; k < path.size(); ++k) {
      cumulative[k] = cumulative[k - 1] + (path[k] - path[k - 1]).norm();
    }
    double total = cumulative.back();
    std::size_t segment = 0;
    for (int t = 0; t < T; ++t) {
      double target = total * t / (T - 1);
      if (total == 0.0) {
        waypoints.push_back(path[0]);
        continue;
      }
      while (segment + 2 < path.size() && cumulative[segment + 1] < target) {
        ++segment;
      }
      double span = cumulative[segment + 1] - cumulative[segment];
      double frac = span == 0.0 ? 0.0 : (target - cumulative[segment]) / span;
      if (frac <= 0.0) {
        waypoints.push_back(path[segment]);
      } else if (frac >= 1.0) {
        waypoints.push_back(path[segment + 1]);
      } else {
        waypoints.push_back(path[segment] +
                            frac * (path[segment + 1] - path[segment]));
      }
    }
  }

  Demonstration demo;
  demo.values = Eigen::MatrixXd::Zero(T, task.model.n_x);
  demo.mask =
      Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(
          T, task.model.n_x, false);
  for (int t = 0; t < T; ++t) {
    demo.values(t, 0) = waypoints[t].x();
    demo.values(t, 1) = waypoints[t].y();
    demo.mask(t, 0) = true;
    demo.mask(t, 1) = true;
  }
  demo.sigma = sigma;
  demo.state_scale = task.state_scale.size() == task.model.n_x
                         ? task.state_scale
                         : Eigen::VectorXd::Ones(task.model.n_x);

  // task cost over the observable entries: state x_t is the previous
  // waypoint filled into a zero state (x_0 is the true initial state),
  // controls are zero, so unobservable terms drop out
  Eigen::VectorXd zero_u = Eigen::VectorXd::Zero(task.model.n_u);
  auto filled = [&](int t) {  // visited state x_{t+1} = waypoint row t
    Eigen::VectorXd x = Eigen::VectorXd::Zero(task.model.n_x);
    x[0] = demo.values(t, 0);
    x[1] = demo.values(t, 1);
    return x;
  };
  demo.demo_cost = task.stage_cost(task.x_init, zero_u, 0);
  for (int t = 1; t < T; ++t) {
    demo.demo_cost += task.stage_cost(filled(t - 1), zero_u, t);
  }
  demo.demo_cost += task.terminal_cost(filled(T - 1));

  if (task.n_constraints > 0) {
    for (int t = 0; t < T; ++t) {
      demo.demo_violation +=
          task.constraint(filled(t), zero_u).cwiseMax(0.0).sum();
    }
  }
  return demo;
}

}  // namespace mbd
