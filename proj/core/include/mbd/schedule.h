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

#ifndef MBD_SCHEDULE_H_
#define MBD_SCHEDULE_H_

#include <vector>

namespace mbd {

// Which cumulative product the candidate sampler at step i is parameterized
// by. kStepBar uses alpha_bar_i (never degenerate); kPrevBar uses
// alpha_bar_{i-1}, which is exactly 1 at i = 1 so the proposal variance
// collapses to 0 there. Both are exposed; kStepBar is the default everywhere.
enum class IndexConvention {
  kStepBar,
  kPrevBar,
};

// Parameters of the candidate proposal at one denoising step:
// candidates ~ N(scale * y, variance * I).
struct SamplingParams {
  double scale;
  double variance;
};

// Noise schedule for the forward corruption process. Indices are 1-based to
// match the step counter of the annealing loop: beta(i), alpha(i) for
// i in [1, n], alpha_bar(i) for i in [0, n] with alpha_bar(0) = 1.
class NoiseSchedule {
 public:
  int n_steps() const { return n_steps_; }
  double beta(int i) const;
  double alpha(int i) const;       // 1 - beta(i)
  double alpha_bar(int i) const;   // prod_{k<=i} alpha(k), alpha_bar(0) = 1

  // Proposal scale/variance for step i. Under kStepBar:
  //   scale = 1/sqrt(alpha_bar_i), variance = 1/alpha_bar_i - 1;
  // under kPrevBar the same with alpha_bar_{i-1}. The variance is returned
  // exactly (0 at i = 1 under kPrevBar); samplers apply a degeneracy floor.
  SamplingParams sampling_params(int i, IndexConvention convention) const;

 private:
  friend NoiseSchedule make_linear_schedule(double beta_start, double beta_end,
                                            int n_steps);

  int n_steps_ = 0;
  std::vector<double> beta_;       // beta_[i], i in [1, n]; beta_[0] unused
  std::vector<double> alpha_;      // alpha_[i], same layout
  std::vector<double> alpha_bar_;  // alpha_bar_[i], i in [0, n]
};

// Linearly spaced betas from beta_start to beta_end over n_steps entries.
// Requires n_steps >= 1 and 0 < beta_start <= beta_end < 1.
NoiseSchedule make_linear_schedule(double beta_start, double beta_end,
                                   int n_steps);

}  // namespace mbd

#endif  // MBD_SCHEDULE_H_
