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

#include "mbd/mlp.h"

#include <cmath>
#include <string>

#include "mbd/error.h"
#include "mbd/rng.h"

namespace mbd {

namespace {

std::vector<int> layer_sizes(int n_inputs, const std::vector<int>& hidden,
                             int n_outputs) {
  std::vector<int> sizes;
  sizes.push_back(n_inputs);
  for (int h : hidden) sizes.push_back(h);
  sizes.push_back(n_outputs);
  for (int s : sizes) {
    if (s < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "layer widths must be positive");
    }
  }
  return sizes;
}

}  // namespace

Dataset spiral_dataset(int n_points, std::uint64_t seed) {
  if (n_points < 2 || n_points % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "spiral_dataset needs an even n_points >= 2");
  }
  const int per_class = n_points / 2;
  const double max_angle = 2.5 * M_PI;
  const double noise = 0.06;

  Dataset data;
  data.features.resize(n_points, 2);
  data.labels.resize(n_points);
  data.n_classes = 2;
  for (int c = 0; c < 2; ++c) {
    RandomStream rng(seed, static_cast<std::uint64_t>(c));
    for (int k = 0; k < per_class; ++k) {
      double t = static_cast<double>(k) / (per_class - 1);
      double angle = t * max_angle + c * M_PI;
      double radius = 0.2 + 0.8 * t;
      int row = c * per_class + k;
      data.features(row, 0) = radius * std::cos(angle) + noise * rng.gaussian();
      data.features(row, 1) = radius * std::sin(angle) + noise * rng.gaussian();
      data.labels[row] = c;
    }
  }
  return data;
}

int mlp_parameter_count(int n_inputs, const std::vector<int>& hidden_widths,
                        int n_outputs) {
  auto sizes = layer_sizes(n_inputs, hidden_widths, n_outputs);
  int count = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    count += sizes[l] * sizes[l + 1] + sizes[l + 1];
  }
  return count;
}

Eigen::MatrixXd mlp_logits(const Dataset& dataset,
                           const std::vector<int>& hidden_widths,
                           const Eigen::VectorXd& params) {
  auto sizes = layer_sizes(static_cast<int>(dataset.features.cols()),
                           hidden_widths, dataset.n_classes);
  int expected = mlp_parameter_count(static_cast<int>(dataset.features.cols()),
                                     hidden_widths, dataset.n_classes);
  if (params.size() != expected) {
    throw Error(ErrorCode::kDimMismatch,
                "parameter vector has " + std::to_string(params.size()) +
                    " entries, architecture needs " + std::to_string(expected));
  }

  Eigen::MatrixXd activations = dataset.features;
  int offset = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    int fan_in = sizes[l];
    int fan_out = sizes[l + 1];
    Eigen::Map<const Eigen::MatrixXd> weights(params.data() + offset, fan_in,
                                              fan_out);
    offset += fan_in * fan_out;
    Eigen::Map<const Eigen::VectorXd> bias(params.data() + offset, fan_out);
    offset += fan_out;
    activations = (activations * weights).rowwise() + bias.transpose();
    if (l + 2 < sizes.size()) {
      activations = activations.cwiseMax(0.0);  // ReLU on hidden layers
    }
  }
  return activations;
}

ObjectiveProblem mlp_classification_objective(
    const Dataset& dataset, const std::vector<int>& hidden_widths,
    double param_bound) {
  if (dataset.size() == 0 || dataset.n_classes < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "dataset must be nonempty with >= 2 classes");
  }
  if (!(param_bound > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "param_bound must be positive");
  }
  int count = mlp_parameter_count(static_cast<int>(dataset.features.cols()),
                                  hidden_widths, dataset.n_classes);

  ObjectiveProblem p;
  p.name = "mlp";
  p.dimension = count;
  p.lower = Eigen::VectorXd::Constant(count, -param_bound);
  p.upper = Eigen::VectorXd::Constant(count, param_bound);
  p.cost = [dataset, hidden_widths](const Eigen::VectorXd& params) {
    Eigen::MatrixXd logits = mlp_logits(dataset, hidden_widths, params);
    // stable mean cross-entropy
    Eigen::VectorXd row_max = logits.rowwise().maxCoeff();
    Eigen::VectorXd lse =
        ((logits.colwise() - row_max).array().exp().rowwise().sum().log() +
         row_max.array())
            .matrix();
    double total = 0.0;
    for (int r = 0; r < logits.rows(); ++r) {
      total += lse[r] - logits(r, dataset.labels[r]);
    }
    return total / logits.rows();
  };
  return p;
}

double mlp_accuracy(const Dataset& dataset,
                    const std::vector<int>& hidden_widths,
                    const Eigen::VectorXd& params) {
  Eigen::MatrixXd logits = mlp_logits(dataset, hidden_widths, params);
  int hits = 0;
  for (int r = 0; r < logits.rows(); ++r) {
    int arg = 0;
    logits.row(r).maxCoeff(&arg);
    hits += arg == dataset.labels[r];
  }
  return static_cast<double>(hits) / logits.rows();
}

}  // namespace mbd
