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

#ifndef MBDCLI_RUN_CONFIG_H_
#define MBDCLI_RUN_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbd/baselines.h"
#include "mbd/demos.h"
#include "mbd/diffusion.h"
#include "mbd/dynamics.h"
#include "mbd/mlp.h"
#include "mbd/objectives.h"
#include "mbd/schedule.h"
#include "mbd/trajopt.h"

namespace mbd::cli {

enum class Method {
  kMbd,
  kCem,
  kMppi,
};

struct DemoSpec {
  bool enabled = false;
  std::string source;  // "rrt" or "csv"
  std::string csv_path;
  double sigma = 0.1;
  RrtConfig rrt;
  bool seed_follows_run = true;  // rrt source: reuse the run seed
  bool has_cost_override = false;
  double cost_override = 0.0;
};

// One experiment: a problem, a method, a seed list, and where to put the
// artifacts. Flat keys in the JSON mirror these fields; `raw` keeps the
// parsed document for echoing into summaries.
struct RunConfig {
  std::string task;
  Method method = Method::kMbd;
  std::vector<std::uint64_t> seeds;
  std::string out_dir = "out";

  // schedule
  int n_steps = 100;
  double beta_start = 1e-4;
  double beta_end = 1e-2;
  IndexConvention index_convention = IndexConvention::kStepBar;

  // sampler
  int n_samples = 100;
  double temperature = 0.1;
  BackwardKind backward_kind = BackwardKind::kMcsa;
  ConstraintMode constraint_mode = ConstraintMode::kHard;
  double penalty_kappa = 0.0;
  int n_workers = 0;

  // cem / mppi
  int n_iters = 100;
  EliteMode elite_mode = EliteMode::kTopk;
  int top_k = 0;
  double smoothing = 0.5;
  double init_std = 0.5;
  double noise_std = 0.3;

  // objective family parameters
  int dimension = 10;
  std::vector<int> hidden = {32, 32};
  int spiral_points = 400;
  double param_bound = 4.0;
  std::string idx_images;
  std::string idx_labels;

  DemoSpec demo;
  nlohmann::json raw;
};

// Throws CONFIG_INVALID on schema violations (wrong types, unknown enum
// strings, empty seed list). Task existence is checked at problem
// construction, not here.
RunConfig parse_run_config(const nlohmann::json& doc);

const char* method_name(Method method);

// names accepted by the "task" key
std::vector<std::string> trajectory_task_names();
std::vector<std::string> objective_names();
bool is_trajectory_task(const std::string& name);

// Throws TASK_UNKNOWN for unknown names.
TaskSpec make_task(const std::string& name);

// dataset, when non-null, receives the classification data of the mlp
// objectives (left untouched for analytic objectives)
ObjectiveProblem make_objective(const RunConfig& config,
                                Dataset* dataset = nullptr);

MbdConfig to_mbd_config(const RunConfig& config, std::uint64_t seed);
TrajOptConfig to_trajopt_config(const RunConfig& config, std::uint64_t seed);
CemConfig to_cem_config(const RunConfig& config, std::uint64_t seed);
MppiConfig to_mppi_config(const RunConfig& config, std::uint64_t seed);

}  // namespace mbd::cli

#endif  // MBDCLI_RUN_CONFIG_H_
