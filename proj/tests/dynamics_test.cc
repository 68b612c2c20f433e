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

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "mbd/error.h"
#include "mbd/rng.h"

namespace mbd {
namespace {

TEST(WrapAngle, PrincipalValues) {
  EXPECT_DOUBLE_EQ(wrap_angle(0.0), 0.0);
  EXPECT_DOUBLE_EQ(wrap_angle(0.5), 0.5);
  EXPECT_DOUBLE_EQ(wrap_angle(-0.5), -0.5);
  EXPECT_NEAR(wrap_angle(2.0 * M_PI + 0.3), 0.3, 1e-12);
  EXPECT_NEAR(wrap_angle(-2.0 * M_PI - 0.3), -0.3, 1e-12);
  EXPECT_NEAR(wrap_angle(4.0 * M_PI - 0.2), -0.2, 1e-12);
  EXPECT_NEAR(std::abs(wrap_angle(M_PI)), M_PI, 1e-9);
  EXPECT_NEAR(std::abs(wrap_angle(3.0 * M_PI)), M_PI, 1e-9);
}

TEST(RectPenetration, HandCases) {
  Rect rect{0.0, 0.0, 2.0, 1.0};
  // inside: depth to the nearest face
  EXPECT_DOUBLE_EQ(rect_signed_penetration(rect, 0.5, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(rect_signed_penetration(rect, 1.5, 0.8), 0.2);
  // on the boundary: exactly zero
  EXPECT_DOUBLE_EQ(rect_signed_penetration(rect, 2.0, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(rect_signed_penetration(rect, 1.0, 0.0), 0.0);
  // outside: minus the clearance (face / corner)
  EXPECT_DOUBLE_EQ(rect_signed_penetration(rect, 3.0, 0.5), -1.0);
  EXPECT_DOUBLE_EQ(rect_signed_penetration(rect, 3.0, 2.0), -std::sqrt(2.0));
}

TEST(RectPenetration, UnionTakesWorstRect) {
  std::vector<Rect> rects = {{0.0, 0.0, 1.0, 1.0}, {2.0, 0.0, 3.0, 1.0}};
  EXPECT_DOUBLE_EQ(rects_signed_penetration(rects, 1.5, 0.5), -0.5);
  EXPECT_DOUBLE_EQ(rects_signed_penetration(rects, 0.5, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(rects_signed_penetration(rects, 2.9, 0.2), 0.1);
}

TEST(DoubleIntegrator, MatchesHandEulerRecursion) {
  TaskSpec task = double_integrator_2d();
  task.horizon = 10;
  Eigen::MatrixXd controls(10, 2);
  for (int t = 0; t < 10; ++t) {
    controls(t, 0) = 0.1 * t - 0.3;
    controls(t, 1) = 0.05;
  }

  // hand recursion: p += dt v (current v), v += dt u, cost on pre-step state
  Eigen::Vector2d goal(1.0, 1.0);
  Eigen::Vector2d p(0.0, 0.0), v(0.0, 0.0);
  double cost = 0.0;
  const double dt = 0.1;
  Trajectory traj = rollout(task, controls);
  for (int t = 0; t < 10; ++t) {
    Eigen::Vector2d u = controls.row(t).transpose();
    cost += (p - goal).squaredNorm() + 0.01 * u.squaredNorm();
    Eigen::Vector2d p_next = p + dt * v;
    v += dt * u;
    p = p_next;
    EXPECT_NEAR(traj.states(t, 0), p[0], 1e-15);
    EXPECT_NEAR(traj.states(t, 1), p[1], 1e-15);
    EXPECT_NEAR(traj.states(t, 2), v[0], 1e-15);
    EXPECT_NEAR(traj.states(t, 3), v[1], 1e-15);
  }
  EXPECT_NEAR(traj.total_cost, cost, 1e-12 * cost);
  EXPECT_DOUBLE_EQ(traj.constraint_violation, 0.0);
}

TEST(Rollout, CostRecomputableFromStoredTrajectory) {
  TaskSpec task = double_integrator_2d();
  RandomStream rng(11, 0);
  Eigen::MatrixXd controls(task.horizon, 2);
  for (int t = 0; t < task.horizon; ++t) {
    controls(t, 0) = 2.0 * (rng.uniform() - 0.5);
    controls(t, 1) = 2.0 * (rng.uniform() - 0.5);
  }
  Trajectory traj = rollout(task, controls);

  double recomputed = 0.0;
  Eigen::VectorXd x_prev = task.x_init;
  for (int t = 0; t < task.horizon; ++t) {
    recomputed += task.stage_cost(x_prev, traj.controls.row(t).transpose(), t);
    x_prev = traj.states.row(t).transpose();
  }
  recomputed += task.terminal_cost(x_prev);
  EXPECT_NEAR(traj.total_cost, recomputed, 1e-12 * std::abs(recomputed));

  // re-rolling the stored (already clamped) controls is bit-stable
  Trajectory again = rollout(task, traj.controls);
  EXPECT_EQ(again.states, traj.states);
  EXPECT_EQ(again.total_cost, traj.total_cost);
}

TEST(Rollout, ClampsControlsToBounds) {
  TaskSpec task = double_integrator_2d();
  Eigen::MatrixXd controls =
      Eigen::MatrixXd::Constant(task.horizon, 2, 5.0);
  controls.col(1).setConstant(-7.0);
  Trajectory traj = rollout(task, controls);
  for (int t = 0; t < task.horizon; ++t) {
    EXPECT_DOUBLE_EQ(traj.controls(t, 0), 1.0);
    EXPECT_DOUBLE_EQ(traj.controls(t, 1), -1.0);
  }
}

TEST(Rollout, RejectsWrongControlShape) {
  TaskSpec task = double_integrator_2d();
  EXPECT_THROW(rollout(task, Eigen::MatrixXd::Zero(task.horizon - 1, 2)),
               Error);
  EXPECT_THROW(rollout(task, Eigen::MatrixXd::Zero(task.horizon, 3)), Error);
}

TEST(Rollout, ThrowsOnNonfiniteState) {
  TaskSpec task;
  task.name = "blows_up";
  task.model.n_x = 1;
  task.model.n_u = 1;
  task.model.dt = 1.0;
  task.model.integrator = Integrator::kEuler;
  task.model.u_lower = Eigen::VectorXd::Constant(1, -1.0);
  task.model.u_upper = Eigen::VectorXd::Constant(1, 1.0);
  task.model.derivative = [](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
    return Eigen::VectorXd::Constant(1, 1.0 / x[0]);
  };
  task.horizon = 3;
  task.x_init = Eigen::VectorXd::Zero(1);
  task.stage_cost = [](const Eigen::VectorXd&, const Eigen::VectorXd&, int) {
    return 0.0;
  };
  task.terminal_cost = [](const Eigen::VectorXd&) { return 0.0; };
  try {
    rollout(task, Eigen::MatrixXd::Zero(3, 1));
    FAIL() << "expected NONFINITE_STATE";
  } catch (const Error& error) {
    EXPECT_EQ(error.code(), ErrorCode::kNonfiniteState);
  }
}

TEST(Pendulum, UprightIsExactEquilibrium) {
  TaskSpec task = pendulum_swingup();
  task.x_init = Eigen::Vector2d(0.0, 0.0);
  Trajectory traj = rollout(task, Eigen::MatrixXd::Zero(task.horizon, 1));
  for (int t = 0; t < task.horizon; ++t) {
    EXPECT_EQ(traj.states(t, 0), 0.0);
    EXPECT_EQ(traj.states(t, 1), 0.0);
  }
  EXPECT_DOUBLE_EQ(task.final_metric(traj.states.row(task.horizon - 1)), 0.0);
}

TEST(Pendulum, UnforcedEnergyIsConserved) {
  // E = theta_dot^2 / 2 + g cos(theta) is invariant when u = 0
  // (theta measured from upright, m = l = 1)
  const double g = 9.81;
  auto energy = [g](double th, double om) {
    return 0.5 * om * om + g * std::cos(th);
  };
  for (Eigen::Vector2d x0 : {Eigen::Vector2d(2.0, 0.0),
                             Eigen::Vector2d(2.5, 0.5)}) {
    TaskSpec task = pendulum_swingup();
    task.x_init = x0;
    Trajectory traj = rollout(task, Eigen::MatrixXd::Zero(task.horizon, 1));
    double e0 = energy(x0[0], x0[1]);
    for (int t = 0; t < task.horizon; ++t) {
      double e = energy(traj.states(t, 0), traj.states(t, 1));
      EXPECT_NEAR(e, e0, 1e-4 * std::abs(e0)) << "t=" << t;
    }
  }
}

TEST(Pendulum, NoConstantTorqueSwingsUp) {
  // the torque limit is far below mgl: no constant input reaches the top
  // within the horizon
  TaskSpec task = pendulum_swingup();
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 40; ++k) {
    double u = -2.0 + 4.0 * k / 40.0;
    Eigen::MatrixXd controls = Eigen::MatrixXd::Constant(task.horizon, 1, u);
    Trajectory traj = rollout(task, controls);
    best = std::min(best,
                    task.final_metric(traj.states.row(task.horizon - 1)));
  }
  EXPECT_GT(best, task.success_threshold);
}

TEST(Cartpole, MirrorSymmetry) {
  TaskSpec task = cartpole_swingup();
  RandomStream rng(4, 0);
  Eigen::MatrixXd controls(task.horizon, 1);
  for (int t = 0; t < task.horizon; ++t) {
    controls(t, 0) = 8.0 * (rng.uniform() - 0.5);
  }
  Trajectory pos = rollout(task, controls);

  TaskSpec mirrored = cartpole_swingup();
  mirrored.x_init = -task.x_init;
  Trajectory neg = rollout(mirrored, -controls);

  for (int t = 0; t < task.horizon; ++t) {
    for (int j = 0; j < 4; ++j) {
      EXPECT_NEAR(neg.states(t, j), -pos.states(t, j), 1e-12)
          << "t=" << t << " j=" << j;
    }
  }
}

TEST(Integrators, EulerErrorScalesLinearlyAndRk4IsTight) {
  // pendulum vector field, fixed control; reference via 512 RK4 substeps
  TaskSpec task = pendulum_swingup();
  Eigen::VectorXd x0 = Eigen::Vector2d(2.0, 0.3);
  Eigen::VectorXd u = Eigen::VectorXd::Constant(1, 0.5);
  const double interval = 0.2;

  auto integrate = [&](Integrator kind, int substeps) {
    DynamicsModel model = task.model;
    model.integrator = kind;
    model.dt = interval / substeps;
    Eigen::VectorXd x = x0;
    for (int s = 0; s < substeps; ++s) x = model.step(x, u);
    return x;
  };

  Eigen::VectorXd reference = integrate(Integrator::kRk4, 512);
  double euler_1 = (integrate(Integrator::kEuler, 1) - reference).norm();
  double euler_8 = (integrate(Integrator::kEuler, 8) - reference).norm();
  double rk4_1 = (integrate(Integrator::kRk4, 1) - reference).norm();

  double ratio = euler_1 / euler_8;  // first-order: ~8 with 8x finer steps
  EXPECT_GT(ratio, 5.5);
  EXPECT_LT(ratio, 11.0);
  EXPECT_LT(rk4_1, 1e-6);
  EXPECT_LT(rk4_1, 0.001 * euler_1);
}

TEST(Car2d, ObstacleGeometryIsFrozen) {
  TaskSpec task = car2d_umaze();
  ASSERT_EQ(task.obstacles.size(), 3u);
  const double expected[3][4] = {
      {1.0, 0.0, 1.4, 2.0},
      {2.6, 0.0, 3.0, 2.0},
      {1.0, -0.4, 3.0, 0.4},
  };
  for (int r = 0; r < 3; ++r) {
    EXPECT_DOUBLE_EQ(task.obstacles[r].x_min, expected[r][0]) << "rect " << r;
    EXPECT_DOUBLE_EQ(task.obstacles[r].y_min, expected[r][1]) << "rect " << r;
    EXPECT_DOUBLE_EQ(task.obstacles[r].x_max, expected[r][2]) << "rect " << r;
    EXPECT_DOUBLE_EQ(task.obstacles[r].y_max, expected[r][3]) << "rect " << r;
  }

  // the bar must dip below the workspace floor: sliding along py = 0 under
  // the U is a real penetration, not a free tunnel
  EXPECT_DOUBLE_EQ(rects_signed_penetration(task.obstacles, 2.0, 0.0), 0.4);
  EXPECT_DOUBLE_EQ(rects_signed_penetration(task.obstacles, 1.2, 1.0), 0.2);
  EXPECT_DOUBLE_EQ(rects_signed_penetration(task.obstacles, 0.5, 0.5), -0.5);

  Eigen::VectorXd inside(5);
  inside << 2.0, 0.0, 0.0, 0.0, 0.0;
  Eigen::VectorXd g = task.constraint(inside, Eigen::Vector2d::Zero());
  ASSERT_EQ(g.size(), 1);
  EXPECT_DOUBLE_EQ(g[0], 0.4);
}

TEST(Car2d, StateClampKeepsWorkspaceSpeedAndSteering) {
  TaskSpec task = car2d_umaze();
  Eigen::VectorXd x(5);
  x << 5.0, -1.0, 0.3, 3.0, 1.0;
  task.model.clamp_state(x);
  EXPECT_DOUBLE_EQ(x[0], 4.0);
  EXPECT_DOUBLE_EQ(x[1], 0.0);
  EXPECT_DOUBLE_EQ(x[2], 0.3);  // heading is free
  EXPECT_DOUBLE_EQ(x[3], 2.0);
  EXPECT_DOUBLE_EQ(x[4], 0.6);

  Eigen::MatrixXd full_throttle(task.horizon, 2);
  full_throttle.col(0).setConstant(1.0);
  full_throttle.col(1).setConstant(0.0);
  Trajectory traj = rollout(task, full_throttle);
  for (int t = 0; t < task.horizon; ++t) {
    EXPECT_GE(traj.states(t, 0), 0.0);
    EXPECT_LE(traj.states(t, 0), 4.0);
    EXPECT_GE(traj.states(t, 1), 0.0);
    EXPECT_LE(traj.states(t, 1), 4.0);
    EXPECT_LE(std::abs(traj.states(t, 3)), 2.0);
    EXPECT_LE(std::abs(traj.states(t, 4)), 0.6);
  }
}

TEST(Car2d, ViolationMatchesManualSumOverVisitedStates) {
  TaskSpec task = car2d_umaze();
  // drive straight through the left arm of the U
  Eigen::MatrixXd controls(task.horizon, 2);
  controls.col(0).setConstant(1.0);
  controls.col(1).setConstant(0.0);
  Trajectory traj = rollout(task, controls);

  double manual = 0.0;
  for (int t = 0; t < task.horizon; ++t) {
    manual += std::max(
        0.0, rects_signed_penetration(task.obstacles, traj.states(t, 0),
                                      traj.states(t, 1)));
  }
  EXPECT_GT(traj.constraint_violation, 0.0);
  EXPECT_NEAR(traj.constraint_violation, manual, 1e-12 * manual);
}

}  // namespace
}  // namespace mbd
