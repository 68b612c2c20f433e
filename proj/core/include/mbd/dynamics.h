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

#ifndef MBD_DYNAMICS_H_
#define MBD_DYNAMICS_H_

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mbd {

enum class Integrator {
  kEuler,
  kRk4,
};

// wrap to (-pi, pi]
double wrap_angle(double angle);

struct Rect {
  double x_min, y_min, x_max, y_max;
};

// Positive penetration depth inside, negative distance outside.
double rect_signed_penetration(const Rect& rect, double x, double y);

// Penetration into the union: max over rects of the signed value.
double rects_signed_penetration(const std::vector<Rect>& rects, double x,
                                double y);

// Continuous-time model x' = f(x, u) discretized by the chosen integrator at
// fixed dt. step() clamps the control to its bounds, advances one interval,
// and applies the optional state clamp. All maps are pure.
struct DynamicsModel {
  int n_x = 0;
  int n_u = 0;
  double dt = 0.0;
  Integrator integrator = Integrator::kRk4;
  Eigen::VectorXd u_lower;
  Eigen::VectorXd u_upper;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&,
                                const Eigen::VectorXd&)>
      derivative;
  std::function<void(Eigen::VectorXd&)> clamp_state;  // optional

  Eigen::VectorXd step(const Eigen::VectorXd& x,
                       const Eigen::VectorXd& u) const;
};

// Finite-horizon optimal control task: minimize
// sum_t stage_cost(x_t, u_t, t) + terminal_cost(x_T) subject to the
// dynamics; constraint(x, u) <= 0 componentwise means feasible
// (n_constraints = 0 for unconstrained tasks).
struct TaskSpec {
  std::string name;
  DynamicsModel model;
  int horizon = 0;
  Eigen::VectorXd x_init;
  std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&, int)>
      stage_cost;
  std::function<double(const Eigen::VectorXd&)> terminal_cost;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&,
                                const Eigen::VectorXd&)>
      constraint;
  int n_constraints = 0;

  // success metric on the final state (goal distance, angle error, ...)
  std::function<double(const Eigen::VectorXd&)> final_metric;
  double success_threshold = 0.0;

  // per-dimension scale of one normalized state unit, used by partial-state
  // likelihood models; defaults to ones
  Eigen::VectorXd state_scale;

  // forbidden regions, exported for plotting; empty when unconstrained
  std::vector<Rect> obstacles;

  // planar navigation metadata for demo planning, meaningful only when
  // has_planar_goal (the first two state dims are then a workspace position)
  bool has_planar_goal = false;
  Eigen::Vector2d goal_xy{0.0, 0.0};
  Rect workspace{0.0, 0.0, 0.0, 0.0};
};

// Rolled-out trajectory: states are x_1..x_T (x_0 = x_init is implicit),
// controls are the clamped u_0..u_{T-1} actually applied, so re-rolling the
// stored controls reproduces the stored states exactly. total_cost includes
// the terminal cost; constraint_violation sums positive parts over the
// visited states.
struct Trajectory {
  Eigen::MatrixXd states;    // T x n_x
  Eigen::MatrixXd controls;  // T x n_u
  double total_cost = 0.0;
  double constraint_violation = 0.0;
};

// Applies the control sequence (rows u_0..u_{T-1}, raw units) from x_init,
// accumulating cost and constraint violation in the same pass. Throws
// NONFINITE_STATE if integration produces a non-finite state.
Trajectory rollout(const TaskSpec& task, const Eigen::MatrixXd& controls);

// point mass in the plane, Euler, dt 0.1, T 50, goal (1, 1)
TaskSpec double_integrator_2d();

// torque-limited pendulum, angle measured from upright, RK4, dt 0.05, T 60
TaskSpec pendulum_swingup();

// cart-pole swing-up, RK4, dt 0.04, T 60
TaskSpec cartpole_swingup();

// kinematic bicycle in a [0,4]^2 workspace with a U-shaped forbidden region
// between start (0.5, 0.5) and goal (3.5, 0.5), RK4, dt 0.1, T 50
TaskSpec car2d_umaze();

}  // namespace mbd

#endif  // MBD_DYNAMICS_H_
