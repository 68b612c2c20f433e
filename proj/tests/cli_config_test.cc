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

#include <functional>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "mbd/error.h"
#include "mbdcli/idx.h"

namespace mbd::cli {
namespace {

using nlohmann::json;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& error) {
    return error.code();
  }
  ADD_FAILURE() << "expected an Error to be thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(ParseRunConfig, MinimalDocumentGetsDocumentedDefaults) {
  RunConfig config = parse_run_config(json{{"task", "sphere"}});
  EXPECT_EQ(config.task, "sphere");
  EXPECT_EQ(config.method, Method::kMbd);
  EXPECT_EQ(config.seeds, std::vector<std::uint64_t>{0});
  EXPECT_EQ(config.out_dir, "out");
  EXPECT_EQ(config.n_steps, 100);
  EXPECT_DOUBLE_EQ(config.beta_start, 1e-4);
  EXPECT_DOUBLE_EQ(config.beta_end, 1e-2);
  EXPECT_EQ(config.index_convention, IndexConvention::kStepBar);
  EXPECT_EQ(config.n_samples, 100);
  EXPECT_DOUBLE_EQ(config.temperature, 0.1);
  EXPECT_EQ(config.backward_kind, BackwardKind::kMcsa);
  EXPECT_EQ(config.constraint_mode, ConstraintMode::kHard);
  EXPECT_DOUBLE_EQ(config.penalty_kappa, 0.0);
  EXPECT_EQ(config.n_workers, 0);
  EXPECT_EQ(config.n_iters, 100);
  EXPECT_EQ(config.elite_mode, EliteMode::kTopk);
  EXPECT_EQ(config.top_k, 0);
  EXPECT_DOUBLE_EQ(config.smoothing, 0.5);
  EXPECT_DOUBLE_EQ(config.init_std, 0.5);
  EXPECT_DOUBLE_EQ(config.noise_std, 0.3);
  EXPECT_EQ(config.dimension, 10);
  EXPECT_EQ(config.hidden, (std::vector<int>{32, 32}));
  EXPECT_EQ(config.spiral_points, 400);
  EXPECT_DOUBLE_EQ(config.param_bound, 4.0);
  EXPECT_TRUE(config.idx_images.empty());
  EXPECT_FALSE(config.demo.enabled);
}

TEST(ParseRunConfig, OverridesAreHonored) {
  json doc = {
      {"task", "ackley"},        {"method", "cem"},
      {"seeds", {3, 1, 4}},      {"out_dir", "runs/a"},
      {"n_steps", 50},           {"beta_start", 2e-5},
      {"beta_end", 0.01},        {"index_convention", "prev_bar"},
      {"n_samples", 500},        {"temperature", 0.02},
      {"backward", "reverse_sde"}, {"constraint_mode", "penalty"},
      {"penalty_kappa", 25.0},   {"n_workers", 8},
      {"n_iters", 12},           {"elite_mode", "softmax"},
      {"top_k", 17},             {"smoothing", 0.9},
      {"init_std", 0.25},        {"noise_std", 0.4},
      {"dimension", 6},          {"hidden", {8}},
      {"spiral_points", 100},    {"param_bound", 2.0},
  };
  RunConfig config = parse_run_config(doc);
  EXPECT_EQ(config.method, Method::kCem);
  EXPECT_EQ(config.seeds, (std::vector<std::uint64_t>{3, 1, 4}));
  EXPECT_EQ(config.out_dir, "runs/a");
  EXPECT_EQ(config.n_steps, 50);
  EXPECT_DOUBLE_EQ(config.beta_start, 2e-5);
  EXPECT_EQ(config.index_convention, IndexConvention::kPrevBar);
  EXPECT_EQ(config.backward_kind, BackwardKind::kReverseSde);
  EXPECT_EQ(config.constraint_mode, ConstraintMode::kPenalty);
  EXPECT_DOUBLE_EQ(config.penalty_kappa, 25.0);
  EXPECT_EQ(config.elite_mode, EliteMode::kSoftmax);
  EXPECT_EQ(config.top_k, 17);
  EXPECT_EQ(config.hidden, std::vector<int>{8});
  EXPECT_DOUBLE_EQ(config.param_bound, 2.0);
}

TEST(ParseRunConfig, DemoBlockParsing) {
  json doc = {{"task", "car2d_umaze"},
              {"demo",
               {{"source", "rrt"},
                {"sigma", 0.35},
                {"max_step", 0.25},
                {"max_iters", 500},
                {"goal_bias", 0.1},
                {"seed", 3},
                {"demo_cost", 132.0}}}};
  RunConfig config = parse_run_config(doc);
  ASSERT_TRUE(config.demo.enabled);
  EXPECT_EQ(config.demo.source, "rrt");
  EXPECT_DOUBLE_EQ(config.demo.sigma, 0.35);
  EXPECT_DOUBLE_EQ(config.demo.rrt.max_step, 0.25);
  EXPECT_EQ(config.demo.rrt.max_iters, 500);
  EXPECT_DOUBLE_EQ(config.demo.rrt.goal_bias, 0.1);
  EXPECT_EQ(config.demo.rrt.seed, 3u);
  EXPECT_FALSE(config.demo.seed_follows_run);
  EXPECT_TRUE(config.demo.has_cost_override);
  EXPECT_DOUBLE_EQ(config.demo.cost_override, 132.0);

  // without an explicit planner seed the run seed is reused
  RunConfig follows = parse_run_config(
      json{{"task", "car2d_umaze"}, {"demo", json::object()}});
  EXPECT_TRUE(follows.demo.enabled);
  EXPECT_TRUE(follows.demo.seed_follows_run);
  EXPECT_FALSE(follows.demo.has_cost_override);

  RunConfig csv = parse_run_config(
      json{{"task", "car2d_umaze"},
           {"demo", {{"source", "csv"}, {"path", "demo.csv"}}}});
  EXPECT_EQ(csv.demo.source, "csv");
  EXPECT_EQ(csv.demo.csv_path, "demo.csv");
}

TEST(ParseRunConfig, SchemaViolationsAreConfigInvalid) {
  auto invalid = [](json doc) {
    return code_of([doc] { parse_run_config(doc); }) ==
           ErrorCode::kConfigInvalid;
  };
  EXPECT_TRUE(invalid(json::object()));                       // missing task
  EXPECT_TRUE(invalid(json::array({1, 2})));                  // not an object
  EXPECT_TRUE(invalid({{"task", 7}}));                        // wrong type
  EXPECT_TRUE(invalid({{"task", "sphere"}, {"method", "sgd"}}));
  EXPECT_TRUE(invalid({{"task", "sphere"}, {"backward", "ode"}}));
  EXPECT_TRUE(invalid({{"task", "sphere"}, {"elite_mode", "best"}}));
  EXPECT_TRUE(invalid({{"task", "sphere"}, {"constraint_mode", "soft"}}));
  EXPECT_TRUE(invalid({{"task", "sphere"}, {"index_convention", "both"}}));
  EXPECT_TRUE(invalid({{"task", "sphere"}, {"seeds", json::array()}}));
  EXPECT_TRUE(invalid({{"task", "sphere"}, {"seeds", "zero"}}));
  EXPECT_TRUE(invalid({{"task", "sphere"}, {"n_steps", 0}}));
  EXPECT_TRUE(invalid({{"task", "sphere"}, {"n_samples", 0}}));
  EXPECT_TRUE(invalid({{"task", "sphere"}, {"n_iters", 0}}));
  EXPECT_TRUE(invalid({{"task", "sphere"}, {"temperature", 0.0}}));
  EXPECT_TRUE(invalid({{"task", "sphere"}, {"beta_start", 0.0}}));
  EXPECT_TRUE(invalid({{"task", "sphere"}, {"beta_end", 1.0}}));
  EXPECT_TRUE(invalid(
      {{"task", "sphere"}, {"beta_start", 0.02}, {"beta_end", 0.01}}));
  EXPECT_TRUE(invalid({{"task", "car2d_umaze"}, {"demo", "yes"}}));
  EXPECT_TRUE(invalid(
      {{"task", "car2d_umaze"}, {"demo", {{"source", "telepathy"}}}}));
  EXPECT_TRUE(invalid({{"task", "car2d_umaze"}, {"demo", {{"source", "csv"}}}}));
  EXPECT_TRUE(invalid(
      {{"task", "car2d_umaze"}, {"demo", {{"sigma", 0.0}}}}));
  EXPECT_TRUE(invalid({{"task", "car2d_umaze"},
                       {"method", "cem"},
                       {"demo", json::object()}}));
}

TEST(TaskRegistry, NamesAndUnknowns) {
  for (const std::string& name : trajectory_task_names()) {
    EXPECT_TRUE(is_trajectory_task(name));
    EXPECT_EQ(make_task(name).name, name);
  }
  EXPECT_FALSE(is_trajectory_task("sphere"));
  EXPECT_EQ(code_of([] { make_task("bogus"); }), ErrorCode::kTaskUnknown);

  EXPECT_STREQ(method_name(Method::kMbd), "mbd");
  EXPECT_STREQ(method_name(Method::kCem), "cem");
  EXPECT_STREQ(method_name(Method::kMppi), "mppi");
}

TEST(MakeObjective, DispatchesAndFillsDataset) {
  RunConfig config = parse_run_config(
      json{{"task", "sphere"}, {"dimension", 7}});
  EXPECT_EQ(make_objective(config).dimension, 7);

  config = parse_run_config(json{{"task", "synthetic_multimodal_1d"}});
  EXPECT_EQ(make_objective(config).dimension, 1);

  config = parse_run_config(json{{"task", "spiral_mlp"},
                                 {"hidden", {8}},
                                 {"spiral_points", 40},
                                 {"param_bound", 2.0}});
  Dataset data;
  ObjectiveProblem mlp = make_objective(config, &data);
  EXPECT_EQ(mlp.dimension, mlp_parameter_count(2, {8}, 2));
  EXPECT_DOUBLE_EQ(mlp.upper[0], 2.0);
  EXPECT_EQ(data.size(), 40);

  config = parse_run_config(json{{"task", "mnist_mlp"}});
  EXPECT_EQ(code_of([&] { make_objective(config); }),
            ErrorCode::kConfigInvalid);

  config = parse_run_config(json{{"task", "nonesuch"}});
  EXPECT_EQ(code_of([&] { make_objective(config); }),
            ErrorCode::kTaskUnknown);
}

TEST(ConfigConversion, FieldsReachTheSolverConfigs) {
  RunConfig config = parse_run_config(json{{"task", "car2d_umaze"},
                                           {"n_steps", 40},
                                           {"beta_start", 2e-4},
                                           {"beta_end", 5e-3},
                                           {"n_samples", 77},
                                           {"temperature", 0.05},
                                           {"backward", "reverse_sde"},
                                           {"constraint_mode", "penalty"},
                                           {"penalty_kappa", 9.0},
                                           {"n_workers", 3},
                                           {"n_iters", 21},
                                           {"elite_mode", "softmax"},
                                           {"top_k", 5},
                                           {"smoothing", 0.7},
                                           {"init_std", 0.4},
                                           {"noise_std", 0.2}});

  MbdConfig mbd = to_mbd_config(config, 11);
  EXPECT_EQ(mbd.schedule.n_steps(), 40);
  EXPECT_DOUBLE_EQ(mbd.schedule.beta(1), 2e-4);
  EXPECT_EQ(mbd.n_samples, 77);
  EXPECT_DOUBLE_EQ(mbd.temperature, 0.05);
  EXPECT_EQ(mbd.seed, 11u);
  EXPECT_EQ(mbd.backward_kind, BackwardKind::kReverseSde);
  EXPECT_EQ(mbd.n_workers, 3);

  TrajOptConfig traj = to_trajopt_config(config, 12);
  EXPECT_EQ(traj.schedule.n_steps(), 40);
  EXPECT_EQ(traj.constraint_mode, ConstraintMode::kPenalty);
  EXPECT_DOUBLE_EQ(traj.penalty_kappa, 9.0);
  EXPECT_EQ(traj.seed, 12u);

  CemConfig cem = to_cem_config(config, 13);
  EXPECT_EQ(cem.n_iters, 21);
  EXPECT_EQ(cem.n_samples, 77);
  EXPECT_EQ(cem.elite_mode, EliteMode::kSoftmax);
  EXPECT_EQ(cem.top_k, 5);
  EXPECT_DOUBLE_EQ(cem.smoothing, 0.7);
  EXPECT_DOUBLE_EQ(cem.init_std, 0.4);
  EXPECT_EQ(cem.seed, 13u);

  MppiConfig mppi = to_mppi_config(config, 14);
  EXPECT_EQ(mppi.n_iters, 21);
  EXPECT_DOUBLE_EQ(mppi.noise_std, 0.2);
  EXPECT_EQ(mppi.seed, 14u);
}

std::string be32(std::uint32_t value) {
  std::string out(4, '\0');
  out[0] = static_cast<char>((value >> 24) & 0xff);
  out[1] = static_cast<char>((value >> 16) & 0xff);
  out[2] = static_cast<char>((value >> 8) & 0xff);
  out[3] = static_cast<char>(value & 0xff);
  return out;
}

std::string idx_images(std::uint32_t count, std::uint32_t rows,
                       std::uint32_t cols, const std::string& payload,
                       std::uint32_t magic = 0x00000803) {
  return be32(magic) + be32(count) + be32(rows) + be32(cols) + payload;
}

std::string idx_labels(std::uint32_t count, const std::string& payload,
                       std::uint32_t magic = 0x00000801) {
  return be32(magic) + be32(count) + payload;
}

TEST(Idx, ParsesHandBuiltPair) {
  // two 2x2 images with known bytes and labels {1, 0}
  std::string pixels = {'\x00', '\x33', '\x66', '\x99',
                        '\xcc', '\xff', '\x0a', '\x14'};
  std::stringstream images(idx_images(2, 2, 2, pixels));
  std::stringstream labels(idx_labels(2, std::string("\x01\x00", 2)));
  Dataset data = load_idx(images, labels);

  ASSERT_EQ(data.size(), 2);
  ASSERT_EQ(data.features.cols(), 4);
  EXPECT_EQ(data.features(0, 0), 0.0);
  EXPECT_EQ(data.features(0, 1), 51.0 / 255.0);
  EXPECT_EQ(data.features(0, 2), 102.0 / 255.0);
  EXPECT_EQ(data.features(0, 3), 153.0 / 255.0);
  EXPECT_EQ(data.features(1, 0), 204.0 / 255.0);
  EXPECT_EQ(data.features(1, 1), 1.0);
  EXPECT_EQ(data.features(1, 2), 10.0 / 255.0);
  EXPECT_EQ(data.features(1, 3), 20.0 / 255.0);
  EXPECT_EQ(data.labels, (std::vector<int>{1, 0}));
  EXPECT_EQ(data.n_classes, 2);
}

TEST(Idx, AllZeroLabelsStillGiveTwoClasses) {
  std::stringstream images(idx_images(1, 1, 1, std::string("\x7f", 1)));
  std::stringstream labels(idx_labels(1, std::string("\x00", 1)));
  Dataset data = load_idx(images, labels);
  EXPECT_EQ(data.n_classes, 2);
  EXPECT_EQ(data.features(0, 0), 127.0 / 255.0);
}

TEST(Idx, ReportsTypedErrors) {
  auto load = [](std::string image_bytes, std::string label_bytes) {
    return code_of([&] {
      std::stringstream images(image_bytes);
      std::stringstream labels(label_bytes);
      load_idx(images, labels);
    });
  };
  std::string pixels(8, '\x01');
  std::string good_images = idx_images(2, 2, 2, pixels);
  std::string good_labels = idx_labels(2, std::string("\x01\x00", 2));

  EXPECT_EQ(load(idx_images(2, 2, 2, pixels, 0x00000801), good_labels),
            ErrorCode::kBadMagic);
  EXPECT_EQ(load(good_images, idx_labels(2, "\x01", 0x00000803)),
            ErrorCode::kBadMagic);
  EXPECT_EQ(load(good_images, idx_labels(3, std::string("\x01\x00\x01", 3))),
            ErrorCode::kDimMismatch);
  EXPECT_EQ(load(idx_images(2, 2, 2, pixels.substr(0, 7)), good_labels),
            ErrorCode::kTruncatedFile);
  EXPECT_EQ(load(be32(0x00000803) + be32(2), good_labels),
            ErrorCode::kTruncatedFile);
  EXPECT_EQ(load(good_images, idx_labels(2, "\x01")),
            ErrorCode::kTruncatedFile);
}

TEST(Idx, MissingFilesAreIoErrors) {
  EXPECT_EQ(code_of([] {
              load_idx_files("/nonexistent/images.idx",
                             "/nonexistent/labels.idx");
            }),
            ErrorCode::kIoError);
}

}  // namespace
}  // namespace mbd::cli
