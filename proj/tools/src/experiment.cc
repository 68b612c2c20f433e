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

#include "mbdcli/experiment.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "mbd/error.h"
#include "mbd/mlp.h"
#include "mbd/trace_io.h"

namespace mbd::cli {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  }
  return out;
}

nlohmann::json rect_json(const Rect& rect) {
  return nlohmann::json::array({rect.x_min, rect.y_min, rect.x_max,
                                rect.y_max});
}

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double std_of(const std::vector<double>& values) {
  double mu = mean_of(values);
  double sq = 0.0;
  for (double v : values) sq += (v - mu) * (v - mu);
  return std::sqrt(sq / static_cast<double>(values.size()));
}

struct SeedRun {
  SeedOutcome outcome;
  DiffusionTrace trace;
  Trajectory best;          // trajectory tasks only
  bool has_trajectory = false;
  double final_metric = 0.0;
  double accuracy = -1.0;   // mlp objectives only
};

SeedRun run_objective_seed(const RunConfig& config,
                           const ObjectiveProblem& problem,
                           const Dataset& dataset, std::uint64_t seed) {
  SeedRun run;
  MbdResult result;
  if (config.method == Method::kMbd) {
    result = run_mbd(problem, to_mbd_config(config, seed));
  } else {
    result = run_cem(problem, to_cem_config(config, seed));
  }
  run.outcome.final_cost = result.final_cost;
  run.outcome.best_cost = result.trace.best_cost;
  run.outcome.success = true;
  if (dataset.size() > 0) {
    run.accuracy = mlp_accuracy(dataset, config.hidden, result.solution);
  }
  run.trace = std::move(result.trace);
  return run;
}

SeedRun run_task_seed(const RunConfig& config, const TaskSpec& task,
                      const Demonstration* demo, std::uint64_t seed) {
  SeedRun run;
  TrajOptResult result;
  if (config.method == Method::kMbd) {
    result = run_mbd_trajopt(task, to_trajopt_config(config, seed), demo);
  } else if (config.method == Method::kCem) {
    result = run_cem(task, to_cem_config(config, seed));
  } else {
    result = run_mppi(task, to_mppi_config(config, seed));
  }
  run.outcome.final_cost = result.solution.total_cost;
  run.outcome.best_cost = result.trace.best_cost;
  run.outcome.violation = result.best.constraint_violation;
  run.final_metric =
      task.final_metric(result.best.states.bottomRows(1).transpose());
  run.outcome.success = result.found_feasible &&
                        run.final_metric < task.success_threshold;
  run.best = std::move(result.best);
  run.has_trajectory = true;
  run.trace = std::move(result.trace);
  return run;
}

}  // namespace

Demonstration make_demonstration(const RunConfig& config, const TaskSpec& task,
                                 std::uint64_t run_seed) {
  const DemoSpec& spec = config.demo;
  if (spec.source == "csv") {
    std::ifstream in(spec.csv_path);
    if (!in) {
      throw Error(ErrorCode::kIoError, "cannot open " + spec.csv_path);
    }
    Demonstration demo = read_demonstration_csv(in);
    if (spec.has_cost_override) demo.demo_cost = spec.cost_override;
    return demo;
  }

  if (!task.has_planar_goal) {
    throw Error(ErrorCode::kConfigInvalid,
                "task '" + task.name + "' has no planar goal to plan toward");
  }
  RrtConfig rrt = spec.rrt;
  rrt.seed = spec.seed_follows_run ? run_seed : spec.rrt.seed;
  Eigen::Vector2d start = task.x_init.head<2>();
  for (int attempt = 0;; ++attempt) {
    try {
      std::vector<Eigen::Vector2d> path =
          rrt_plan(start, task.goal_xy, task.obstacles, task.workspace, rrt);
      Demonstration demo = path_to_demonstration(path, task, spec.sigma);
      if (spec.has_cost_override) demo.demo_cost = spec.cost_override;
      return demo;
    } catch (const Error& error) {
      if (error.code() != ErrorCode::kNoPathFound || attempt >= 7) throw;
      rrt.seed += 1000;  // offset the planner seed and retry
    }
  }
}

nlohmann::json run_experiment(const RunConfig& config) {
  bool trajectory = is_trajectory_task(config.task);
  if (!trajectory && config.method == Method::kMppi) {
    throw Error(ErrorCode::kConfigInvalid,
                "mppi needs a trajectory task, got '" + config.task + "'");
  }
  if (config.demo.enabled && !trajectory) {
    throw Error(ErrorCode::kConfigInvalid,
                "demo attachment needs a trajectory task");
  }

  TaskSpec task;
  ObjectiveProblem problem;
  Dataset dataset;
  if (trajectory) {
    task = make_task(config.task);
  } else {
    problem = make_objective(config, &dataset);
  }

  std::error_code fs_error;
  fs::create_directories(config.out_dir, fs_error);
  if (fs_error) {
    throw Error(ErrorCode::kIoError,
                "cannot create " + config.out_dir + ": " + fs_error.message());
  }
  fs::path out_dir(config.out_dir);

  nlohmann::json per_seed = nlohmann::json::array();
  std::vector<double> final_costs;
  std::vector<double> best_costs;
  std::vector<double> wall_times;
  int n_success = 0;

  for (std::uint64_t seed : config.seeds) {
    Demonstration demo;
    if (config.demo.enabled) demo = make_demonstration(config, task, seed);

    auto t0 = std::chrono::steady_clock::now();
    SeedRun run =
        trajectory
            ? run_task_seed(config, task,
                            config.demo.enabled ? &demo : nullptr, seed)
            : run_objective_seed(config, problem, dataset, seed);
    auto t1 = std::chrono::steady_clock::now();
    run.outcome.seed = seed;
    run.outcome.wall_time_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();

    std::string tag = "_seed" + std::to_string(seed);
    {
      std::ofstream out = open_out(out_dir / ("trace" + tag + ".csv"));
      write_trace_csv(out, run.trace);
    }
    if (run.has_trajectory) {
      std::ofstream out = open_out(out_dir / ("trajectory" + tag + ".csv"));
      write_trajectory_csv(out, task, run.best);
    }

    nlohmann::json summary{
        {"task", config.task},
        {"method", method_name(config.method)},
        {"seed", seed},
        {"config", config.raw},
        {"final_cost", run.outcome.final_cost},
        {"best_cost", run.outcome.best_cost},
        {"wall_time_ms", run.outcome.wall_time_ms},
    };
    if (run.has_trajectory) {
      summary["violation"] = run.outcome.violation;
      summary["success"] = run.outcome.success;
      summary["final_metric"] = run.final_metric;
      nlohmann::json obstacles = nlohmann::json::array();
      for (const Rect& rect : task.obstacles) obstacles.push_back(rect_json(rect));
      summary["obstacles"] = obstacles;
    }
    if (run.accuracy >= 0.0) summary["accuracy"] = run.accuracy;
    {
      std::ofstream out = open_out(out_dir / ("summary" + tag + ".json"));
      out << summary.dump(2) << '\n';
    }

    per_seed.push_back(nlohmann::json{
        {"seed", seed},
        {"final_cost", run.outcome.final_cost},
        {"best_cost", run.outcome.best_cost},
        {"violation", run.outcome.violation},
        {"success", run.outcome.success},
        {"wall_time_ms", run.outcome.wall_time_ms},
    });
    final_costs.push_back(run.outcome.final_cost);
    best_costs.push_back(run.outcome.best_cost);
    wall_times.push_back(run.outcome.wall_time_ms);
    if (run.outcome.success) ++n_success;
  }

  nlohmann::json aggregate{
      {"task", config.task},
      {"method", method_name(config.method)},
      {"n_seeds", config.seeds.size()},
      {"mean_cost", mean_of(final_costs)},
      {"std_cost", std_of(final_costs)},
      {"mean_best_cost", mean_of(best_costs)},
      {"std_best_cost", std_of(best_costs)},
      {"success_rate",
       static_cast<double>(n_success) /
           static_cast<double>(config.seeds.size())},
      {"mean_wall_time_ms", mean_of(wall_times)},
      {"seeds", per_seed},
  };
  {
    std::ofstream out = open_out(out_dir / "aggregate.json");
    out << aggregate.dump(2) << '\n';
  }
  return aggregate;
}

}  // namespace mbd::cli
