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

#include <cstdint>

#include <benchmark/benchmark.h>
#include <Eigen/Dense>

#include "mbd/diffusion.h"
#include "mbd/dynamics.h"
#include "mbd/mlp.h"
#include "mbd/objectives.h"
#include "mbd/rng.h"
#include "mbd/schedule.h"

namespace {

void BM_MakeLinearSchedule(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mbd::make_linear_schedule(1e-4, 1e-2, 100));
  }
}
BENCHMARK(BM_MakeLinearSchedule);

void BM_GaussianCandidates(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Eigen::VectorXd center = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd sd = Eigen::VectorXd::Ones(d);
  std::uint64_t stream = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mbd::gaussian_candidates(center, sd, 256, 7, ++stream));
  }
  state.SetItemsProcessed(state.iterations() * 256 * d);
}
BENCHMARK(BM_GaussianCandidates)->Arg(10)->Arg(100);

void BM_WeightedMean(benchmark::State& state) {
  Eigen::MatrixXd batch = mbd::gaussian_candidates(
      Eigen::VectorXd::Zero(50), Eigen::VectorXd::Ones(50), 256, 3, 1);
  Eigen::VectorXd log_weights = -batch.rowwise().squaredNorm();
  for (auto _ : state) {
    benchmark::DoNotOptimize(mbd::weighted_mean(batch, log_weights));
  }
}
BENCHMARK(BM_WeightedMean);

void BM_AnnealingStepSphere10(benchmark::State& state) {
  mbd::ObjectiveProblem problem = mbd::sphere(10);
  mbd::NoiseSchedule schedule = mbd::make_linear_schedule(1e-4, 1e-2, 100);
  Eigen::VectorXd y = Eigen::VectorXd::Constant(10, 0.3);
  for (auto _ : state) {
    Eigen::MatrixXd candidates = mbd::sample_candidates(
        y, schedule, 60, mbd::IndexConvention::kStepBar, 256, 5);
    Eigen::VectorXd costs = mbd::evaluate_unit_batch(problem, candidates, 1);
    mbd::WeightedMean wm = mbd::weighted_mean(candidates, -costs / 0.1);
    Eigen::VectorXd score = mbd::estimate_score(y, wm.y_bar, schedule, 60);
    benchmark::DoNotOptimize(mbd::mcsa_step(y, score, schedule, 60));
  }
}
BENCHMARK(BM_AnnealingStepSphere10);

void BM_DoubleIntegratorRollout(benchmark::State& state) {
  mbd::TaskSpec task = mbd::double_integrator_2d();
  Eigen::MatrixXd controls(task.horizon, task.model.n_u);
  mbd::RandomStream rng(11, 0);
  for (int t = 0; t < task.horizon; ++t) {
    for (int j = 0; j < task.model.n_u; ++j) controls(t, j) = rng.gaussian();
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(mbd::rollout(task, controls));
  }
}
BENCHMARK(BM_DoubleIntegratorRollout);

void BM_SpiralMlpCost(benchmark::State& state) {
  mbd::Dataset spiral = mbd::spiral_dataset(400);
  mbd::ObjectiveProblem problem =
      mbd::mlp_classification_objective(spiral, {32, 32}, 4.0);
  mbd::RandomStream rng(13, 0);
  Eigen::VectorXd params(problem.dimension);
  for (int j = 0; j < problem.dimension; ++j) params[j] = 0.1 * rng.gaussian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(problem.cost(params));
  }
}
BENCHMARK(BM_SpiralMlpCost);

}  // namespace

BENCHMARK_MAIN();
