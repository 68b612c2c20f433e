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

#include "mbdcli/run_config.h"

#include <algorithm>
#include <utility>

#include "mbd/error.h"
#include "mbd/mlp.h"
#include "mbdcli/idx.h"

namespace mbd::cli {

namespace {

[[noreturn]] void bad_config(const std::string& message) {
  throw Error(ErrorCode::kConfigInvalid, message);
}

template <typename T>
T get_or(const nlohmann::json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    bad_config(std::string("key '") + key + "' has the wrong type");
  }
}

Method parse_method(const std::string& name) {
  if (name == "mbd") return Method::kMbd;
  if (name == "cem") return Method::kCem;
  if (name == "mppi") return Method::kMppi;
  bad_config("unknown method '" + name + "' (expected mbd, cem, or mppi)");
}

IndexConvention parse_convention(const std::string& name) {
  if (name == "step_bar") return IndexConvention::kStepBar;
  if (name == "prev_bar") return IndexConvention::kPrevBar;
  bad_config("unknown index_convention '" + name +
             "' (expected step_bar or prev_bar)");
}

BackwardKind parse_backward(const std::string& name) {
  if (name == "mcsa") return BackwardKind::kMcsa;
  if (name == "reverse_sde") return BackwardKind::kReverseSde;
  bad_config("unknown backward '" + name + "' (expected mcsa or reverse_sde)");
}

ConstraintMode parse_constraint_mode(const std::string& name) {
  if (name == "hard") return ConstraintMode::kHard;
  if (name == "penalty") return ConstraintMode::kPenalty;
  bad_config("unknown constraint_mode '" + name +
             "' (expected hard or penalty)");
}

EliteMode parse_elite_mode(const std::string& name) {
  if (name == "softmax") return EliteMode::kSoftmax;
  if (name == "topk") return EliteMode::kTopk;
  bad_config("unknown elite_mode '" + name + "' (expected softmax or topk)");
}

DemoSpec parse_demo(const nlohmann::json& doc) {
  DemoSpec spec;
  spec.enabled = true;
  spec.source = get_or<std::string>(doc, "source", "rrt");
  if (spec.source == "csv") {
    spec.csv_path = get_or<std::string>(doc, "path", "");
    if (spec.csv_path.empty()) bad_config("demo.source=csv needs demo.path");
  } else if (spec.source != "rrt") {
    bad_config("unknown demo.source '" + spec.source +
               "' (expected rrt or csv)");
  }
  spec.sigma = get_or<double>(doc, "sigma", spec.sigma);
  if (!(spec.sigma > 0.0)) bad_config("demo.sigma must be positive");
  spec.rrt.max_step = get_or<double>(doc, "max_step", spec.rrt.max_step);
  spec.rrt.max_iters = get_or<int>(doc, "max_iters", spec.rrt.max_iters);
  spec.rrt.goal_bias = get_or<double>(doc, "goal_bias", spec.rrt.goal_bias);
  if (doc.contains("seed")) {
    spec.rrt.seed = get_or<std::uint64_t>(doc, "seed", 0);
    spec.seed_follows_run = false;
  }
  if (doc.contains("demo_cost")) {
    spec.has_cost_override = true;
    spec.cost_override = get_or<double>(doc, "demo_cost", 0.0);
  }
  return spec;
}

}  // namespace

RunConfig parse_run_config(const nlohmann::json& doc) {
  if (!doc.is_object()) bad_config("config root must be a JSON object");
  RunConfig config;
  config.raw = doc;

  config.task = get_or<std::string>(doc, "task", "");
  if (config.task.empty()) bad_config("missing required key 'task'");
  config.method = parse_method(get_or<std::string>(doc, "method", "mbd"));

  config.seeds = get_or<std::vector<std::uint64_t>>(doc, "seeds", {0});
  if (config.seeds.empty()) bad_config("seeds must be nonempty");
  config.out_dir = get_or<std::string>(doc, "out_dir", config.out_dir);

  config.n_steps = get_or<int>(doc, "n_steps", config.n_steps);
  config.beta_start = get_or<double>(doc, "beta_start", config.beta_start);
  config.beta_end = get_or<double>(doc, "beta_end", config.beta_end);
  config.index_convention = parse_convention(
      get_or<std::string>(doc, "index_convention", "step_bar"));

  config.n_samples = get_or<int>(doc, "n_samples", config.n_samples);
  config.temperature = get_or<double>(doc, "temperature", config.temperature);
  config.backward_kind =
      parse_backward(get_or<std::string>(doc, "backward", "mcsa"));
  config.constraint_mode = parse_constraint_mode(
      get_or<std::string>(doc, "constraint_mode", "hard"));
  config.penalty_kappa =
      get_or<double>(doc, "penalty_kappa", config.penalty_kappa);
  config.n_workers = get_or<int>(doc, "n_workers", config.n_workers);

  config.n_iters = get_or<int>(doc, "n_iters", config.n_iters);
  config.elite_mode =
      parse_elite_mode(get_or<std::string>(doc, "elite_mode", "topk"));
  config.top_k = get_or<int>(doc, "top_k", config.top_k);
  config.smoothing = get_or<double>(doc, "smoothing", config.smoothing);
  config.init_std = get_or<double>(doc, "init_std", config.init_std);
  config.noise_std = get_or<double>(doc, "noise_std", config.noise_std);

  config.dimension = get_or<int>(doc, "dimension", config.dimension);
  config.hidden = get_or<std::vector<int>>(doc, "hidden", config.hidden);
  config.spiral_points =
      get_or<int>(doc, "spiral_points", config.spiral_points);
  config.param_bound = get_or<double>(doc, "param_bound", config.param_bound);
  config.idx_images = get_or<std::string>(doc, "idx_images", "");
  config.idx_labels = get_or<std::string>(doc, "idx_labels", "");

  if (doc.contains("demo")) {
    if (!doc.at("demo").is_object()) bad_config("demo must be an object");
    config.demo = parse_demo(doc.at("demo"));
  }

  if (config.n_steps < 1) bad_config("n_steps must be >= 1");
  if (config.n_samples < 1) bad_config("n_samples must be >= 1");
  if (config.n_iters < 1) bad_config("n_iters must be >= 1");
  if (!(config.temperature > 0.0)) bad_config("temperature must be positive");
  if (!(config.beta_start > 0.0) || !(config.beta_end < 1.0) ||
      config.beta_end < config.beta_start) {
    bad_config("need 0 < beta_start <= beta_end < 1");
  }
  if (config.demo.enabled && config.method != Method::kMbd) {
    bad_config("demo attachment requires method=mbd");
  }
  return config;
}

const char* method_name(Method method) {
  switch (method) {
    case Method::kMbd:
      return "mbd";
    case Method::kCem:
      return "cem";
    case Method::kMppi:
      return "mppi";
  }
  return "unknown";
}

std::vector<std::string> trajectory_task_names() {
  return {"double_integrator_2d", "pendulum_swingup", "cartpole_swingup",
          "car2d_umaze"};
}

std::vector<std::string> objective_names() {
  return {"sphere", "ackley", "rastrigin", "synthetic_multimodal_1d",
          "spiral_mlp", "mnist_mlp"};
}

bool is_trajectory_task(const std::string& name) {
  std::vector<std::string> names = trajectory_task_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

TaskSpec make_task(const std::string& name) {
  if (name == "double_integrator_2d") return double_integrator_2d();
  if (name == "pendulum_swingup") return pendulum_swingup();
  if (name == "cartpole_swingup") return cartpole_swingup();
  if (name == "car2d_umaze") return car2d_umaze();
  throw Error(ErrorCode::kTaskUnknown, "no task named '" + name + "'");
}

ObjectiveProblem make_objective(const RunConfig& config, Dataset* dataset) {
  if (config.dimension < 1) bad_config("dimension must be >= 1");
  if (config.task == "sphere") return sphere(config.dimension);
  if (config.task == "ackley") return ackley(config.dimension);
  if (config.task == "rastrigin") return rastrigin(config.dimension);
  if (config.task == "synthetic_multimodal_1d") {
    return synthetic_multimodal_1d();
  }
  if (config.task == "spiral_mlp" || config.task == "mnist_mlp") {
    Dataset data;
    if (config.task == "spiral_mlp") {
      data = spiral_dataset(config.spiral_points);
    } else {
      if (config.idx_images.empty() || config.idx_labels.empty()) {
        bad_config("mnist_mlp needs idx_images and idx_labels paths");
      }
      data = load_idx_files(config.idx_images, config.idx_labels);
    }
    ObjectiveProblem problem = mlp_classification_objective(
        data, config.hidden, config.param_bound);
    if (dataset != nullptr) *dataset = std::move(data);
    return problem;
  }
  throw Error(ErrorCode::kTaskUnknown, "no task named '" + config.task + "'");
}

MbdConfig to_mbd_config(const RunConfig& config, std::uint64_t seed) {
  MbdConfig out;
  out.schedule =
      make_linear_schedule(config.beta_start, config.beta_end, config.n_steps);
  out.n_samples = config.n_samples;
  out.temperature = config.temperature;
  out.seed = seed;
  out.backward_kind = config.backward_kind;
  out.index_convention = config.index_convention;
  out.n_workers = config.n_workers;
  return out;
}

TrajOptConfig to_trajopt_config(const RunConfig& config, std::uint64_t seed) {
  TrajOptConfig out;
  out.schedule =
      make_linear_schedule(config.beta_start, config.beta_end, config.n_steps);
  out.n_samples = config.n_samples;
  out.temperature = config.temperature;
  out.seed = seed;
  out.backward_kind = config.backward_kind;
  out.index_convention = config.index_convention;
  out.constraint_mode = config.constraint_mode;
  out.penalty_kappa = config.penalty_kappa;
  out.n_workers = config.n_workers;
  return out;
}

CemConfig to_cem_config(const RunConfig& config, std::uint64_t seed) {
  CemConfig out;
  out.n_iters = config.n_iters;
  out.n_samples = config.n_samples;
  out.elite_mode = config.elite_mode;
  out.temperature = config.temperature;
  out.top_k = config.top_k;
  out.smoothing = config.smoothing;
  out.init_std = config.init_std;
  out.seed = seed;
  out.n_workers = config.n_workers;
  return out;
}

MppiConfig to_mppi_config(const RunConfig& config, std::uint64_t seed) {
  MppiConfig out;
  out.n_iters = config.n_iters;
  out.n_samples = config.n_samples;
  out.temperature = config.temperature;
  out.noise_std = config.noise_std;
  out.seed = seed;
  out.n_workers = config.n_workers;
  return out;
}

}  // namespace mbd::cli
