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

#include "mbd/objectives.h"

#include <cmath>

#include "mbd/error.h"

namespace mbd {

namespace {

void check_dim(const ObjectiveProblem& p, const Eigen::VectorXd& y) {
  if (y.size() != p.dimension) {
    throw Error(ErrorCode::kInvalidArgument,
                p.name + " expects dimension " + std::to_string(p.dimension) +
                    ", got " + std::to_string(y.size()));
  }
}

ObjectiveProblem boxed(std::string name, int dimension, double half_width,
                       std::function<double(const Eigen::VectorXd&)> cost) {
  if (dimension < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                name + ": dimension must be >= 1");
  }
  ObjectiveProblem p;
  p.name = std::move(name);
  p.dimension = dimension;
  p.lower = Eigen::VectorXd::Constant(dimension, -half_width);
  p.upper = Eigen::VectorXd::Constant(dimension, half_width);
  p.cost = std::move(cost);
  return p;
}

}  // namespace

Eigen::VectorXd ObjectiveProblem::map_to_unit(const Eigen::VectorXd& y) const {
  check_dim(*this, y);
  Eigen::VectorXd center = 0.5 * (lower + upper);
  Eigen::VectorXd half = 0.5 * (upper - lower);
  return ((y - center).array() / half.array()).matrix();
}

Eigen::VectorXd ObjectiveProblem::map_to_box(const Eigen::VectorXd& u) const {
  check_dim(*this, u);
  Eigen::VectorXd center = 0.5 * (lower + upper);
  Eigen::VectorXd half = 0.5 * (upper - lower);
  return center + (u.array() * half.array()).matrix();
}

Eigen::VectorXd ObjectiveProblem::clamp_to_box(const Eigen::VectorXd& y) const {
  check_dim(*this, y);
  return y.cwiseMax(lower).cwiseMin(upper);
}

ObjectiveProblem sphere(int dimension) {
  return boxed("sphere", dimension, 2.0,
               [](const Eigen::VectorXd& y) { return y.squaredNorm(); });
}

ObjectiveProblem ackley(int dimension) {
  const double a = 20.0;
  const double b = 0.2;
  const double c = 2.0 * M_PI;
  int d = dimension;
  return boxed("ackley", dimension, 32.768, [a, b, c, d](const Eigen::VectorXd& y) {
    double mean_sq = y.squaredNorm() / d;
    double mean_cos = (c * y.array()).cos().sum() / d;
    return -a * std::exp(-b * std::sqrt(mean_sq)) - std::exp(mean_cos) + a +
           std::exp(1.0);
  });
}

ObjectiveProblem rastrigin(int dimension) {
  int d = dimension;
  return boxed("rastrigin", dimension, 5.12, [d](const Eigen::VectorXd& y) {
    return 10.0 * d +
           (y.array().square() - 10.0 * (2.0 * M_PI * y.array()).cos()).sum();
  });
}

ObjectiveProblem synthetic_multimodal_1d() {
  auto well = [](double y, double center, double width) {
    double z = (y - center) / width;
    return std::exp(-0.5 * z * z);
  };
  return boxed("synthetic_multimodal_1d", 1, 3.0,
               [well](const Eigen::VectorXd& y) {
                 double v = y[0];
                 return 1.0 - (0.6 * well(v, -1.2, 0.12) +
                               1.0 * well(v, 0.8, 0.08) +
                               0.5 * well(v, 1.6, 0.1));
               });
}

}  // namespace mbd
