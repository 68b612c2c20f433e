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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mbd/demos.h"
#include "mbd/error.h"
#include "mbd/trace_io.h"
#include "mbdcli/experiment.h"
#include "mbdcli/run_config.h"

namespace {

using mbd::Error;
using mbd::ErrorCode;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigInvalid:
      return 1;
    case ErrorCode::kTaskUnknown:
      return 2;
    case ErrorCode::kIoError:
      return 3;
    default:
      return 4;
  }
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open " + path);
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& error) {
    throw Error(ErrorCode::kConfigInvalid,
                path + " is not valid JSON: " + error.what());
  }
}

struct RunArgs {
  std::string config_path;
  std::int64_t seed_override = -1;
  std::string out_override;
};

int cmd_run(const RunArgs& args) {
  nlohmann::json doc = load_json(args.config_path);
  mbd::cli::RunConfig config = mbd::cli::parse_run_config(doc);
  if (args.seed_override >= 0) {
    config.seeds = {static_cast<std::uint64_t>(args.seed_override)};
  }
  if (!args.out_override.empty()) config.out_dir = args.out_override;
  nlohmann::json aggregate = mbd::cli::run_experiment(config);
  std::cout << config.task << "/" << mbd::cli::method_name(config.method)
            << ": mean_cost=" << aggregate["mean_cost"].get<double>()
            << " success_rate=" << aggregate["success_rate"].get<double>()
            << " -> " << config.out_dir << "/aggregate.json\n";
  return 0;
}

int cmd_list_tasks() {
  std::cout << "trajectory tasks:\n";
  for (const std::string& name : mbd::cli::trajectory_task_names()) {
    std::cout << "  " << name << '\n';
  }
  std::cout << "objectives:\n";
  for (const std::string& name : mbd::cli::objective_names()) {
    std::cout << "  " << name << '\n';
  }
  return 0;
}

struct DemoGenArgs {
  std::string task = "car2d_umaze";
  std::string out_path;
  std::string path_out;
  std::uint64_t seed = 0;
  double sigma = 0.1;
  double max_step = 0.2;
  int max_iters = 1000;
  double goal_bias = 0.05;
};

int cmd_demo_gen(const DemoGenArgs& args) {
  mbd::TaskSpec task = mbd::cli::make_task(args.task);
  if (!task.has_planar_goal) {
    throw Error(ErrorCode::kConfigInvalid,
                "task '" + args.task + "' has no planar goal to plan toward");
  }
  mbd::RrtConfig rrt;
  rrt.max_step = args.max_step;
  rrt.max_iters = args.max_iters;
  rrt.goal_bias = args.goal_bias;
  rrt.seed = args.seed;
  std::vector<Eigen::Vector2d> path =
      mbd::rrt_plan(task.x_init.head<2>(), task.goal_xy, task.obstacles,
                    task.workspace, rrt);
  mbd::Demonstration demo =
      mbd::path_to_demonstration(path, task, args.sigma);

  std::ofstream out(args.out_path);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write " + args.out_path);
  }
  mbd::write_demonstration_csv(out, demo);
  std::cout << "wrote " << args.out_path << " (" << path.size()
            << " waypoints, demo_cost=" << demo.demo_cost
            << ", violation=" << demo.demo_violation << ")\n";

  if (!args.path_out.empty()) {
    std::ofstream path_out(args.path_out);
    if (!path_out) {
      throw Error(ErrorCode::kIoError, "cannot write " + args.path_out);
    }
    mbd::write_path_csv(path_out, path);
    std::cout << "wrote " << args.path_out << '\n';
  }
  return 0;
}

struct PlotDataArgs {
  std::string trace_path;
  std::string out_path;
  int stride = 10;
};

int cmd_plot_data(const PlotDataArgs& args) {
  if (args.stride < 1) {
    throw Error(ErrorCode::kConfigInvalid, "stride must be >= 1");
  }
  std::ifstream in(args.trace_path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open " + args.trace_path);
  }
  std::vector<mbd::TraceRow> rows = mbd::read_trace_csv(in);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!args.out_path.empty()) {
    file.open(args.out_path);
    if (!file) {
      throw Error(ErrorCode::kIoError, "cannot write " + args.out_path);
    }
    out = &file;
  }
  (*out) << "step,j_min,j_mean_batch,ess,y_norm\n";
  (*out).precision(17);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    // keep every stride-th row plus the last one
    if (k % static_cast<std::size_t>(args.stride) != 0 &&
        k + 1 != rows.size()) {
      continue;
    }
    const mbd::TraceRow& row = rows[k];
    (*out) << row.step << ',' << row.j_min << ',' << row.j_mean_batch << ','
           << row.ess << ',' << row.y_norm << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"annealed sampling optimizer: experiments, demos, traces"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "run a seeded experiment");
  run->add_option("--config", run_args.config_path, "JSON run config")
      ->required();
  run->add_option("--seed-override", run_args.seed_override,
                  "replace the config's seed list with a single seed");
  run->add_option("--out", run_args.out_override, "override output directory");

  CLI::App* list_tasks =
      app.add_subcommand("list-tasks", "list built-in tasks and objectives");

  DemoGenArgs demo_args;
  CLI::App* demo_gen = app.add_subcommand(
      "demo-gen", "plan a demonstration and write it as CSV");
  demo_gen->add_option("--task", demo_args.task, "trajectory task name");
  demo_gen->add_option("--out", demo_args.out_path, "demonstration CSV path")
      ->required();
  demo_gen->add_option("--path-out", demo_args.path_out,
                       "also write the raw planner polyline");
  demo_gen->add_option("--seed", demo_args.seed, "planner seed");
  demo_gen->add_option("--sigma", demo_args.sigma, "observation noise scale");
  demo_gen->add_option("--max-step", demo_args.max_step, "planner step size");
  demo_gen->add_option("--max-iters", demo_args.max_iters,
                       "planner iteration budget");
  demo_gen->add_option("--goal-bias", demo_args.goal_bias,
                       "probability of sampling the goal");

  PlotDataArgs plot_args;
  CLI::App* plot_data = app.add_subcommand(
      "plot-data", "downsample a trace CSV for external plotting");
  plot_data->add_option("--trace", plot_args.trace_path, "trace CSV path")
      ->required();
  plot_data->add_option("--out", plot_args.out_path,
                        "output path (default stdout)");
  plot_data->add_option("--stride", plot_args.stride, "keep every n-th row");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (list_tasks->parsed()) return cmd_list_tasks();
    if (demo_gen->parsed()) return cmd_demo_gen(demo_args);
    if (plot_data->parsed()) return cmd_plot_data(plot_args);
  } catch (const Error& error) {
    std::cerr << error.what() << '\n';
    return exit_code_for(error.code());
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 4;
  }
  return 0;
}
