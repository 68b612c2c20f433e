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

#ifndef MBD_OBJECTIVES_H_
#define MBD_OBJECTIVES_H_

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace mbd {

// Box-bounded minimization problem. cost must be pure, finite on the box,
// and safe to call concurrently; samplers work in normalized coordinates
// ([-1, 1]^d) and clamp to the box before every evaluation.
struct ObjectiveProblem {
  std::string name;
  int dimension = 0;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::function<double(const Eigen::VectorXd&)> cost;

  // affine box <-> [-1, 1]^d maps; map_to_box(map_to_unit(y)) = y
  Eigen::VectorXd map_to_unit(const Eigen::VectorXd& y) const;
  Eigen::VectorXd map_to_box(const Eigen::VectorXd& u) const;
  Eigen::VectorXd clamp_to_box(const Eigen::VectorXd& y) const;
};

// J(y) = ||y||^2 on [-2, 2]^d.
ObjectiveProblem sphere(int dimension);

// a = 20, b = 0.2, c = 2*pi on [-32.768, 32.768]^d; J(0) = 0.
ObjectiveProblem ackley(int dimension);

// 10 d + sum(y_j^2 - 10 cos(2 pi y_j)) on [-5.12, 5.12]^d; J(0) = 0.
ObjectiveProblem rastrigin(int dimension);

// Fixed 1-d landscape on [-3, 3]: three Gaussian wells of depth 0.6 / 1.0 /
// 0.5 at -1.2 / 0.8 / 1.6 (widths 0.12 / 0.08 / 0.1) subtracted from 1, so
// the global minimum sits at y = 0.8 with J ~ 0.
ObjectiveProblem synthetic_multimodal_1d();

}  // namespace mbd

#endif  // MBD_OBJECTIVES_H_
