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

#ifndef MBD_MLP_H_
#define MBD_MLP_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mbd/objectives.h"

namespace mbd {

// Labeled feature table; rows of features are examples.
struct Dataset {
  Eigen::MatrixXd features;  // n x d
  std::vector<int> labels;   // n entries in [0, n_classes)
  int n_classes = 0;

  int size() const { return static_cast<int>(labels.size()); }
};

// Deterministic 2-class spiral: two interleaved arms of n_points/2 examples
// each, radius growing linearly with arc parameter, fixed generator seed.
Dataset spiral_dataset(int n_points = 400, std::uint64_t seed = 7);

// Parameters per layer: weights (fan_in x fan_out, column-major) then bias.
int mlp_parameter_count(int n_inputs, const std::vector<int>& hidden_widths,
                        int n_outputs);

// Batch forward pass to logits (n x n_classes); hidden activations are ReLU,
// the output layer is linear. params must have mlp_parameter_count entries.
Eigen::MatrixXd mlp_logits(const Dataset& dataset,
                           const std::vector<int>& hidden_widths,
                           const Eigen::VectorXd& params);

// Mean cross-entropy of the flattened-parameter vector on the dataset, as a
// box-bounded problem over [-param_bound, param_bound]^P.
ObjectiveProblem mlp_classification_objective(const Dataset& dataset,
                                              const std::vector<int>& hidden_widths,
                                              double param_bound = 4.0);

// Fraction of examples whose argmax logit matches the label.
double mlp_accuracy(const Dataset& dataset,
                    const std::vector<int>& hidden_widths,
                    const Eigen::VectorXd& params);

}  // namespace mbd

#endif  // MBD_MLP_H_
