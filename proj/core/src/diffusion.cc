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

#include "mbd/diffusion.h"

#include <cmath>
#include <limits>
#include <string>

#include "mbd/error.h"
#include "mbd/parallel.h"
#include "mbd/rng.h"

namespace mbd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// substream reserved for the reverse-SDE noise of a step; candidate
// substreams are their row indices
constexpr std::uint64_t kNoiseSubstream = ~0ull;

void check_positive(int value, const char* what) {
  if (value < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " must be >= 1, got " +
                    std::to_string(value));
  }
}

}  // namespace

Eigen::MatrixXd gaussian_candidates(const Eigen::VectorXd& center,
                                    const Eigen::VectorXd& sd, int n,
                                    std::uint64_t seed,
                                    std::uint64_t stream_id) {
  check_positive(n, "n");
  if (sd.size() != center.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "center and sd dimension mismatch");
  }
  Eigen::Index d = center.size();
  Eigen::MatrixXd out(n, d);
  for (int k = 0; k < n; ++k) {
    RandomStream rng(seed, stream_id, static_cast<std::uint64_t>(k));
    for (Eigen::Index j = 0; j < d; ++j) {
      out(k, j) = center[j] + sd[j] * rng.gaussian();
    }
  }
  return out;
}

Eigen::MatrixXd sample_candidates(const Eigen::VectorXd& y,
                                  const NoiseSchedule& schedule, int i,
                                  IndexConvention convention, int n,
                                  std::uint64_t seed) {
  SamplingParams params = schedule.sampling_params(i, convention);
  double sd = std::sqrt(std::max(params.variance, kVarianceFloor));
  return gaussian_candidates(params.scale * y,
                             Eigen::VectorXd::Constant(y.size(), sd), n, seed,
                             static_cast<std::uint64_t>(i));
}

Eigen::VectorXd evaluate_unit_batch(const ObjectiveProblem& problem,
                                    const Eigen::MatrixXd& unit_candidates,
                                    int n_workers) {
  int n = static_cast<int>(unit_candidates.rows());
  Eigen::VectorXd costs(n);
  parallel_for(n, n_workers, [&](int k) {
    Eigen::VectorXd unit =
        unit_candidates.row(k).transpose().cwiseMax(-1.0).cwiseMin(1.0);
    costs[k] = problem.cost(problem.map_to_box(unit));
  });
  return costs;
}

WeightedMean weighted_mean(const Eigen::MatrixXd& candidates,
                           const Eigen::VectorXd& log_weights) {
  int n = static_cast<int>(candidates.rows());
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty candidate batch");
  }
  if (log_weights.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "log_weights size does not match candidate count");
  }

  double max_log = -kInf;
  for (int k = 0; k < n; ++k) {
    double lw = log_weights[k];
    if (std::isnan(lw) || lw == kInf) {
      throw Error(ErrorCode::kInvalidArgument,
                  "log weights must be finite or -inf");
    }
    max_log = std::max(max_log, lw);
  }
  if (max_log == -kInf) {
    throw Error(ErrorCode::kAllRejected,
                "all " + std::to_string(n) + " candidates have -inf weight");
  }

  // softmax with max-subtraction; -inf exponentiates to exactly 0
  Eigen::VectorXd w(n);
  for (int k = 0; k < n; ++k) {
    w[k] = std::exp(log_weights[k] - max_log);
  }
  double total = w.sum();
  w /= total;

  WeightedMean result;
  result.y_bar = candidates.transpose() * w;
  result.ess = 1.0 / w.squaredNorm();
  return result;
}

WeightedMean weighted_mean(const std::vector<Candidate>& candidates) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty candidate batch");
  }
  Eigen::Index d = candidates.front().y.size();
  Eigen::MatrixXd ys(candidates.size(), d);
  Eigen::VectorXd log_weights(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (candidates[k].y.size() != d) {
      throw Error(ErrorCode::kInvalidArgument,
                  "candidate dimension mismatch");
    }
    ys.row(k) = candidates[k].y.transpose();
    log_weights[static_cast<Eigen::Index>(k)] = candidates[k].log_weight;
  }
  return weighted_mean(ys, log_weights);
}

Eigen::VectorXd estimate_score(const Eigen::VectorXd& y,
                               const Eigen::VectorXd& y_bar,
                               const NoiseSchedule& schedule, int i) {
  double bar = schedule.alpha_bar(i);
  double one_minus = 1.0 - bar;
  return (-y + std::sqrt(bar) * y_bar) / one_minus;
}

Eigen::VectorXd mcsa_step(const Eigen::VectorXd& y,
                          const Eigen::VectorXd& score,
                          const NoiseSchedule& schedule, int i) {
  double bar = schedule.alpha_bar(i);
  return (y + (1.0 - bar) * score) / std::sqrt(schedule.alpha(i));
}

Eigen::VectorXd reverse_sde_step(const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& score,
                                 const NoiseSchedule& schedule, int i,
                                 std::uint64_t seed) {
  double alpha = schedule.alpha(i);
  RandomStream rng(seed, static_cast<std::uint64_t>(i), kNoiseSubstream);
  Eigen::VectorXd z(y.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) z[j] = rng.gaussian();
  return (y + 0.5 * (1.0 - alpha) * score) / std::sqrt(alpha) +
         std::sqrt(1.0 - alpha) * z;
}

MbdResult run_mbd(const ObjectiveProblem& problem, const MbdConfig& config) {
  check_positive(config.n_samples, "n_samples");
  if (!(config.temperature > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "temperature must be positive");
  }
  int n_steps = config.schedule.n_steps();
  check_positive(n_steps, "schedule n_steps");

  int d = problem.dimension;
  RandomStream init_rng(config.seed, 0);
  Eigen::VectorXd y(d);
  for (int j = 0; j < d; ++j) y[j] = init_rng.gaussian();

  DiffusionTrace trace;
  trace.records.reserve(n_steps);

  for (int i = n_steps; i >= 1; --i) {
    Eigen::MatrixXd candidates =
        sample_candidates(y, config.schedule, i, config.index_convention,
                          config.n_samples, config.seed);
    Eigen::VectorXd costs =
        evaluate_unit_batch(problem, candidates, config.n_workers);

    int best_in_batch = 0;
    double batch_min = costs.minCoeff(&best_in_batch);
    if (batch_min < trace.best_cost) {
      trace.best_cost = batch_min;
      Eigen::VectorXd unit = candidates.row(best_in_batch)
                                 .transpose()
                                 .cwiseMax(-1.0)
                                 .cwiseMin(1.0);
      trace.best_y = problem.map_to_box(unit);
    }

    WeightedMean wm = weighted_mean(candidates, -costs / config.temperature);
    Eigen::VectorXd score = estimate_score(y, wm.y_bar, config.schedule, i);

    trace.records.push_back(TraceRecord{i, y, wm.y_bar, trace.best_cost,
                                        costs.mean(), wm.ess});

    y = config.backward_kind == BackwardKind::kMcsa
            ? mcsa_step(y, score, config.schedule, i)
            : reverse_sde_step(y, score, config.schedule, i, config.seed);
  }

  MbdResult result;
  result.solution = problem.map_to_box(y.cwiseMax(-1.0).cwiseMin(1.0));
  result.final_cost = problem.cost(result.solution);
  result.trace = std::move(trace);
  return result;
}

}  // namespace mbd
