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

#ifndef MBD_BASELINES_H_
#define MBD_BASELINES_H_

#include <cstdint>

#include <Eigen/Dense>

#include "mbd/diffusion.h"
#include "mbd/dynamics.h"
#include "mbd/objectives.h"
#include "mbd/trajopt.h"

namespace mbd {

enum class EliteMode {
  kSoftmax,  // mean <- softmax-weighted batch mean, std stays fixed
  kTopk,     // mean/std <- statistics of the top_k lowest-cost samples
};

struct CemConfig {
  int n_iters = 10;
  int n_samples = 100;
  EliteMode elite_mode = EliteMode::kSoftmax;
  double temperature = 0.1;  // softmax mode only
  int top_k = 0;             // 0 -> n_samples / 10 (at least 1)
  double smoothing = 0.5;    // std <- smoothing * std + (1 - smoothing) * elite std
  double init_std = 0.5;
  Eigen::VectorXd init_mean;  // normalized coords; empty -> zeros
  std::uint64_t seed = 0;
  int n_workers = 0;
};

struct MppiConfig {
  int n_iters = 10;
  int n_samples = 100;
  double temperature = 0.1;
  double noise_std = 0.3;  // normalized control units
  std::uint64_t seed = 0;
  int n_workers = 0;
};

// Cross-entropy method in the normalized box. Iteration j draws its batch
// from stream j, matching the step ids of the annealed sampler, so a
// 1-iteration softmax run on the same (mean, std, seed) reproduces an
// N = 1 annealed run exactly.
MbdResult run_cem(const ObjectiveProblem& problem, const CemConfig& config);

// CEM over flattened normalized control sequences. Candidates are ranked by
// total_cost + 10 * constraint_violation (the same penalized cost the
// softmax weights use).
TrajOptResult run_cem(const TaskSpec& task, const CemConfig& config);

// Iterated open-loop path-integral update: perturb the nominal control
// sequence with Normal(0, noise_std^2) noise, roll out, and replace the
// nominal by the exp(-J / temperature) weighted mean of the perturbations.
TrajOptResult run_mppi(const TaskSpec& task, const MppiConfig& config);

}  // namespace mbd

#endif  // MBD_BASELINES_H_
