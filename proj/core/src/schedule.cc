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

#include "mbd/schedule.h"

#include <cmath>
#include <string>

#include "mbd/error.h"

namespace mbd {

namespace {

void check_step(int i, int lo, int hi, const char* what) {
  if (i < lo || i > hi) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " index " + std::to_string(i) +
                    " outside [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  }
}

}  // namespace

double NoiseSchedule::beta(int i) const {
  check_step(i, 1, n_steps_, "beta");
  return beta_[i];
}

double NoiseSchedule::alpha(int i) const {
  check_step(i, 1, n_steps_, "alpha");
  return alpha_[i];
}

double NoiseSchedule::alpha_bar(int i) const {
  check_step(i, 0, n_steps_, "alpha_bar");
  return alpha_bar_[i];
}

SamplingParams NoiseSchedule::sampling_params(
    int i, IndexConvention convention) const {
  check_step(i, 1, n_steps_, "sampling_params");
  int j = convention == IndexConvention::kStepBar ? i : i - 1;
  double bar = alpha_bar_[j];
  return SamplingParams{1.0 / std::sqrt(bar), 1.0 / bar - 1.0};
}

NoiseSchedule make_linear_schedule(double beta_start, double beta_end,
                                   int n_steps) {
  if (n_steps < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "n_steps must be >= 1, got " + std::to_string(n_steps));
  }
  if (!(beta_start > 0.0) || !(beta_start <= beta_end) || !(beta_end < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "betas must satisfy 0 < beta_start <= beta_end < 1, got [" +
                    std::to_string(beta_start) + ", " +
                    std::to_string(beta_end) + "]");
  }

  NoiseSchedule schedule;
  schedule.n_steps_ = n_steps;
  schedule.beta_.assign(n_steps + 1, 0.0);
  schedule.alpha_.assign(n_steps + 1, 0.0);
  schedule.alpha_bar_.assign(n_steps + 1, 1.0);
  for (int i = 1; i <= n_steps; ++i) {
    double t = n_steps == 1 ? 0.0
                            : static_cast<double>(i - 1) / (n_steps - 1);
    schedule.beta_[i] = beta_start + t * (beta_end - beta_start);
    schedule.alpha_[i] = 1.0 - schedule.beta_[i];
    schedule.alpha_bar_[i] = schedule.alpha_bar_[i - 1] * schedule.alpha_[i];
  }
  return schedule;
}

}  // namespace mbd
