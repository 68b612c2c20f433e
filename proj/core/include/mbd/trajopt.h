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

#ifndef MBD_TRAJOPT_H_
#define MBD_TRAJOPT_H_

#include <cstdint>

#include <Eigen/Dense>

#include "mbd/demos.h"
#include "mbd/diffusion.h"
#include "mbd/dynamics.h"

namespace mbd {

struct TrajOptConfig {
  NoiseSchedule schedule;
  int n_samples = 100;
  double temperature = 0.1;
  std::uint64_t seed = 0;
  BackwardKind backward_kind = BackwardKind::kMcsa;
  IndexConvention index_convention = IndexConvention::kStepBar;
  ConstraintMode constraint_mode = ConstraintMode::kHard;
  double penalty_kappa = 0.0;  // 0 -> 10 / temperature
  int n_workers = 0;
};

// Model weight of a rolled-out trajectory: -cost / temperature, with the
// constraint folded in per mode (kHard rejects violations with -inf,
// kPenalty subtracts kappa * violation).
double traj_log_weight(const Trajectory& traj, double temperature,
                       ConstraintMode mode, double kappa);

// feasibility-aware ordering: any feasible trajectory beats any infeasible
// one, feasible ties break on cost, infeasible ties on violation then cost
bool trajectory_improves(const Trajectory& a, const Trajectory& b);

// Flattened normalized controls ([-1,1] per entry, time-major) to a
// horizon x n_u control matrix in raw units; entries are clamped first.
Eigen::MatrixXd controls_from_unit(const TaskSpec& task,
                                   const Eigen::VectorXd& flat_unit);

struct TrajOptResult {
  Trajectory solution;  // rollout of the final denoised control sequence
  Trajectory best;      // best feasible evaluated; lowest violation if none
  bool found_feasible = false;
  DiffusionTrace trace;  // iterate/y_bar/best_y in normalized control coords
};

// Annealed sampling over control sequences: every candidate is rolled out
// through the task dynamics, weighted by the model weight (or, when demo is
// given, the max of model and demonstration weights), and denoised exactly
// like the generic sampler. When a kHard step rejects the entire batch, the
// step is reweighted with the penalty rule instead of erroring out.
TrajOptResult run_mbd_trajopt(const TaskSpec& task,
                              const TrajOptConfig& config,
                              const Demonstration* demo = nullptr);

}  // namespace mbd

#endif  // MBD_TRAJOPT_H_
