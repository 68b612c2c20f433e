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

#ifndef MBD_DIFFUSION_H_
#define MBD_DIFFUSION_H_

#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "mbd/objectives.h"
#include "mbd/schedule.h"

namespace mbd {

// Proposal variances below this are floored before sampling, so the
// degenerate kPrevBar step at i = 1 still draws (essentially) its mean.
inline constexpr double kVarianceFloor = 1e-12;

// log_weight is a finite value or -inf (hard rejection); never NaN.
struct Candidate {
  Eigen::VectorXd y;
  double log_weight;
};

struct WeightedMean {
  Eigen::VectorXd y_bar;
  double ess;  // 1 / sum(softmax^2) over candidates with finite weight
};

enum class BackwardKind {
  kMcsa,        // deterministic denoising step
  kReverseSde,  // stochastic reverse step with fresh Gaussian noise
};

struct MbdConfig {
  NoiseSchedule schedule;
  int n_samples = 100;
  double temperature = 0.1;
  std::uint64_t seed = 0;
  BackwardKind backward_kind = BackwardKind::kMcsa;
  IndexConvention index_convention = IndexConvention::kStepBar;
  int n_workers = 0;  // 0 -> hardware concurrency
};

// One annealing step: index i, the iterate the batch was sampled around,
// the weighted mean of that batch, best-so-far cost, batch mean cost, and
// the effective sample size of the batch weights.
struct TraceRecord {
  int step;
  Eigen::VectorXd iterate;
  Eigen::VectorXd y_bar;
  double j_min;
  double j_mean_batch;
  double ess;
};

// Exactly one record per step, in execution order (step n..1); j_min is
// non-increasing. best_y/best_cost track the best evaluated candidate.
struct DiffusionTrace {
  std::vector<TraceRecord> records;
  Eigen::VectorXd best_y;
  double best_cost = std::numeric_limits<double>::infinity();
};

struct MbdResult {
  Eigen::VectorXd solution;  // box coordinates
  double final_cost;
  DiffusionTrace trace;
};

// Draws n rows center + sd .* z with z from the counter-based stream keyed
// (seed, stream_id, row); identical keys give identical batches no matter
// how the rows are partitioned across workers.
Eigen::MatrixXd gaussian_candidates(const Eigen::VectorXd& center,
                                    const Eigen::VectorXd& sd, int n,
                                    std::uint64_t seed,
                                    std::uint64_t stream_id);

// Candidate batch for step i around iterate y (normalized coordinates),
// N(scale * y, max(variance, kVarianceFloor) * I).
Eigen::MatrixXd sample_candidates(const Eigen::VectorXd& y,
                                  const NoiseSchedule& schedule, int i,
                                  IndexConvention convention, int n,
                                  std::uint64_t seed);

// Clamp each row to [-1, 1], map to the problem box, evaluate cost. Shared
// by every sampler so equal batches produce bit-equal cost vectors.
Eigen::VectorXd evaluate_unit_batch(const ObjectiveProblem& problem,
                                    const Eigen::MatrixXd& unit_candidates,
                                    int n_workers);

// Softmax-weighted mean over candidates in log domain (max-subtraction);
// -inf entries contribute nothing. Throws ALL_REJECTED when every weight is
// -inf, INVALID_ARGUMENT on NaN weights or empty batches.
WeightedMean weighted_mean(const Eigen::MatrixXd& candidates,
                           const Eigen::VectorXd& log_weights);
WeightedMean weighted_mean(const std::vector<Candidate>& candidates);

// Score of the step-i smoothed density at y from the batch weighted mean:
// -y / (1 - alpha_bar_i) + sqrt(alpha_bar_i) / (1 - alpha_bar_i) * y_bar.
Eigen::VectorXd estimate_score(const Eigen::VectorXd& y,
                               const Eigen::VectorXd& y_bar,
                               const NoiseSchedule& schedule, int i);

// Deterministic denoising step: (y + (1 - alpha_bar_i) * score) / sqrt(alpha_i).
// Composed with estimate_score this collapses to sqrt(alpha_bar_{i-1}) * y_bar.
Eigen::VectorXd mcsa_step(const Eigen::VectorXd& y,
                          const Eigen::VectorXd& score,
                          const NoiseSchedule& schedule, int i);

// Stochastic reverse step:
// (y + (1 - alpha_i) / 2 * score) / sqrt(alpha_i) + sqrt(1 - alpha_i) * z.
Eigen::VectorXd reverse_sde_step(const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& score,
                                 const NoiseSchedule& schedule, int i,
                                 std::uint64_t seed);

// Annealed sampling loop over the problem in normalized coordinates:
// init Y^n ~ N(0, I), then per step draw candidates, weight by
// exp(-cost / temperature), take the weighted mean, and denoise.
MbdResult run_mbd(const ObjectiveProblem& problem, const MbdConfig& config);

}  // namespace mbd

#endif  // MBD_DIFFUSION_H_
