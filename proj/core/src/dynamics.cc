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

#include "mbd/dynamics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mbd/error.h"

namespace mbd {

double wrap_angle(double angle) {
  return std::atan2(std::sin(angle), std::cos(angle));
}

double rect_signed_penetration(const Rect& rect, double x, double y) {
  double dx = std::max(rect.x_min - x, x - rect.x_max);
  double dy = std::max(rect.y_min - y, y - rect.y_max);
  if (dx <= 0.0 && dy <= 0.0) {
    return -std::max(dx, dy);  // inside: depth to the nearest face
  }
  double ox = std::max(dx, 0.0);
  double oy = std::max(dy, 0.0);
  return -std::sqrt(ox * ox + oy * oy);  // outside: minus clearance
}

double rects_signed_penetration(const std::vector<Rect>& rects, double x,
                                double y) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const Rect& r : rects) {
    worst = std::max(worst, rect_signed_penetration(r, x, y));
  }
  return worst;
}

Eigen::VectorXd DynamicsModel::step(const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& u) const {
  Eigen::VectorXd uc = u.cwiseMax(u_lower).cwiseMin(u_upper);
  Eigen::VectorXd next;
  if (integrator == Integrator::kEuler) {
    next = x + dt * derivative(x, uc);
  } else {
    Eigen::VectorXd k1 = derivative(x, uc);
    Eigen::VectorXd k2 = derivative(x + 0.5 * dt * k1, uc);
    Eigen::VectorXd k3 = derivative(x + 0.5 * dt * k2, uc);
    Eigen::VectorXd k4 = derivative(x + dt * k3, uc);
    next = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (clamp_state) clamp_state(next);
  return next;
}

Trajectory rollout(const TaskSpec& task, const Eigen::MatrixXd& controls) {
  int T = task.horizon;
  if (controls.rows() != T || controls.cols() != task.model.n_u) {
    throw Error(ErrorCode::kInvalidArgument,
                task.name + ": control sequence must be " +
                    std::to_string(T) + " x " +
                    std::to_string(task.model.n_u));
  }

  Trajectory traj;
  traj.states.resize(T, task.model.n_x);
  traj.controls.resize(T, task.model.n_u);

  Eigen::VectorXd x = task.x_init;
  for (int t = 0; t < T; ++t) {
    Eigen::VectorXd u = controls.row(t)
                            .transpose()
                            .cwiseMax(task.model.u_lower)
                            .cwiseMin(task.model.u_upper);
    traj.total_cost += task.stage_cost(x, u, t);
    x = task.model.step(x, u);
    if (!x.allFinite()) {
      throw Error(ErrorCode::kNonfiniteState,
                  task.name + ": non-finite state at step " +
                      std::to_string(t + 1));
    }
    traj.states.row(t) = x.transpose();
    traj.controls.row(t) = u.transpose();
    if (task.n_constraints > 0) {
      traj.constraint_violation +=
          task.constraint(x, u).cwiseMax(0.0).sum();
    }
  }
  traj.total_cost += task.terminal_cost(x);
  return traj;
}

TaskSpec double_integrator_2d() {
  const Eigen::Vector2d goal(1.0, 1.0);

  TaskSpec task;
  task.name = "double_integrator_2d";
  task.model.n_x = 4;  // (px, py, vx, vy)
  task.model.n_u = 2;  // (ax, ay)
  task.model.dt = 0.1;
  task.model.integrator = Integrator::kEuler;
  task.model.u_lower = Eigen::Vector2d(-1.0, -1.0);
  task.model.u_upper = Eigen::Vector2d(1.0, 1.0);
  task.model.derivative = [](const Eigen::VectorXd& x,
                             const Eigen::VectorXd& u) {
    Eigen::VectorXd dx(4);
    dx << x[2], x[3], u[0], u[1];
    return dx;
  };
  task.horizon = 50;
  task.x_init = Eigen::VectorXd::Zero(4);
  task.stage_cost = [goal](const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                           int) {
    return (x.head<2>() - goal).squaredNorm() + 0.01 * u.squaredNorm();
  };
  task.terminal_cost = [](const Eigen::VectorXd&) { return 0.0; };
  task.final_metric = [goal](const Eigen::VectorXd& x) {
    return (x.head<2>() - goal).norm();
  };
  task.success_threshold = 0.1;
  task.state_scale = Eigen::VectorXd::Ones(4);
  return task;
}

TaskSpec pendulum_swingup() {
  const double g = 9.81;
  const double m = 1.0;
  const double l = 1.0;

  TaskSpec task;
  task.name = "pendulum_swingup";
  task.model.n_x = 2;  // (theta, theta_dot), theta from upright
  task.model.n_u = 1;
  task.model.dt = 0.05;
  task.model.integrator = Integrator::kRk4;
  task.model.u_lower = Eigen::VectorXd::Constant(1, -2.0);
  task.model.u_upper = Eigen::VectorXd::Constant(1, 2.0);
  task.model.derivative = [g, m, l](const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& u) {
    Eigen::VectorXd dx(2);
    dx << x[1], (g / l) * std::sin(x[0]) + u[0] / (m * l * l);
    return dx;
  };
  task.horizon = 60;
  task.x_init = Eigen::Vector2d(M_PI, 0.0);  // hanging at rest
  task.stage_cost = [](const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                       int) {
    double th = wrap_angle(x[0]);
    return th * th + 0.1 * x[1] * x[1] + 0.001 * u[0] * u[0];
  };
  task.terminal_cost = [](const Eigen::VectorXd&) { return 0.0; };
  task.final_metric = [](const Eigen::VectorXd& x) {
    return std::abs(wrap_angle(x[0]));
  };
  task.success_threshold = 0.3;
  task.state_scale = Eigen::Vector2d(M_PI, 2.0 * M_PI);
  return task;
}

TaskSpec cartpole_swingup() {
  const double g = 9.81;
  const double m_cart = 1.0;
  const double m_pole = 0.1;
  const double half_length = 0.5;

  TaskSpec task;
  task.name = "cartpole_swingup";
  task.model.n_x = 4;  // (pos, theta, vel, theta_dot), theta from upright
  task.model.n_u = 1;
  task.model.dt = 0.04;
  task.model.integrator = Integrator::kRk4;
  task.model.u_lower = Eigen::VectorXd::Constant(1, -10.0);
  task.model.u_upper = Eigen::VectorXd::Constant(1, 10.0);
  task.model.derivative = [=](const Eigen::VectorXd& x,
                              const Eigen::VectorXd& u) {
    double sin_th = std::sin(x[1]);
    double cos_th = std::cos(x[1]);
    double total = m_cart + m_pole;
    double temp = (u[0] + m_pole * half_length * x[3] * x[3] * sin_th) / total;
    double th_dd =
        (g * sin_th - cos_th * temp) /
        (half_length * (4.0 / 3.0 - m_pole * cos_th * cos_th / total));
    double p_dd = temp - m_pole * half_length * th_dd * cos_th / total;
    Eigen::VectorXd dx(4);
    dx << x[2], x[3], p_dd, th_dd;
    return dx;
  };
  task.horizon = 60;
  task.x_init = Eigen::Vector4d(0.0, M_PI, 0.0, 0.0);  // pole hanging
  task.stage_cost = [](const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                       int) {
    double th = wrap_angle(x[1]);
    return th * th + 0.05 * x[0] * x[0] + 0.001 * u[0] * u[0];
  };
  task.terminal_cost = [](const Eigen::VectorXd& x) {
    double th = wrap_angle(x[1]);
    return 10.0 * th * th + 0.5 * x[3] * x[3];
  };
  task.final_metric = [](const Eigen::VectorXd& x) {
    return std::abs(wrap_angle(x[1]));
  };
  task.success_threshold = 0.3;
  task.state_scale = Eigen::Vector4d(2.0, M_PI, 4.0, 2.0 * M_PI);
  return task;
}

TaskSpec car2d_umaze() {
  const double wheelbase = 0.3;
  const Eigen::Vector2d goal(3.5, 0.5);
  // upward-opening U between start and goal: two arms and a floor bar, arm
  // thickness 0.4, outer extent 2.0 x 2.0, centered on x = 2; the bar dips
  // below the workspace floor so sliding along the py = 0 clamp boundary
  // cannot sneak under it with zero penetration
  const std::vector<Rect> forbidden = {
      {1.0, 0.0, 1.4, 2.0},  // left arm
      {2.6, 0.0, 3.0, 2.0},  // right arm
      {1.0, -0.4, 3.0, 0.4},  // bar joining the arms
  };

  TaskSpec task;
  task.name = "car2d_umaze";
  task.model.n_x = 5;  // (px, py, theta, v, delta)
  task.model.n_u = 2;  // (accel, steer_rate)
  task.model.dt = 0.1;
  task.model.integrator = Integrator::kRk4;
  task.model.u_lower = Eigen::Vector2d(-1.0, -2.0);
  task.model.u_upper = Eigen::Vector2d(1.0, 2.0);
  task.model.derivative = [wheelbase](const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& u) {
    Eigen::VectorXd dx(5);
    dx << x[3] * std::cos(x[2]), x[3] * std::sin(x[2]),
        x[3] / wheelbase * std::tan(x[4]), u[0], u[1];
    return dx;
  };
  task.model.clamp_state = [](Eigen::VectorXd& x) {
    x[0] = std::clamp(x[0], 0.0, 4.0);  // workspace
    x[1] = std::clamp(x[1], 0.0, 4.0);
    x[3] = std::clamp(x[3], -2.0, 2.0);  // speed
    x[4] = std::clamp(x[4], -0.6, 0.6);  // steering angle
  };
  task.horizon = 50;
  task.x_init = (Eigen::VectorXd(5) << 0.5, 0.5, 0.0, 0.0, 0.0).finished();
  task.stage_cost = [goal](const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                           int) {
    return (x.head<2>() - goal).norm() + 0.05 * u.squaredNorm();
  };
  task.terminal_cost = [goal](const Eigen::VectorXd& x) {
    return 10.0 * (x.head<2>() - goal).norm();
  };
  task.constraint = [forbidden](const Eigen::VectorXd& x,
                                const Eigen::VectorXd&) {
    Eigen::VectorXd g(1);
    g[0] = rects_signed_penetration(forbidden, x[0], x[1]);
    return g;
  };
  task.n_constraints = 1;
  task.final_metric = [goal](const Eigen::VectorXd& x) {
    return (x.head<2>() - goal).norm();
  };
  task.success_threshold = 0.3;
  task.state_scale =
      (Eigen::VectorXd(5) << 2.0, 2.0, M_PI, 2.0, 0.6).finished();
  task.obstacles = forbidden;
  task.has_planar_goal = true;
  task.goal_xy = goal;
  task.workspace = Rect{0.0, 0.0, 4.0, 4.0};
  return task;
}

}  // namespace mbd
