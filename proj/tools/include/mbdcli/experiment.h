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

#ifndef MBDCLI_EXPERIMENT_H_
#define MBDCLI_EXPERIMENT_H_

#include <cstdint>
#include <string>

#include <json.hpp>

#include "mbd/demos.h"
#include "mbdcli/run_config.h"

namespace mbd::cli {

// Result of one seeded run, independent of how it is persisted.
struct SeedOutcome {
  std::uint64_t seed = 0;
  double final_cost = 0.0;
  double best_cost = 0.0;
  double violation = 0.0;
  bool success = false;
  double wall_time_ms = 0.0;
};

// Builds the demonstration a config asks for: read from CSV, or plan with
// RRT (reseeding on NO_PATH_FOUND up to 8 attempts, offset +1000 each).
Demonstration make_demonstration(const RunConfig& config, const TaskSpec& task,
                                 std::uint64_t run_seed);

// Runs every seed, writing per-seed artifacts (trace CSV, summary JSON, and
// for trajectory tasks the best trajectory as CSV) plus one aggregate JSON
// into config.out_dir. Returns the aggregate document.
nlohmann::json run_experiment(const RunConfig& config);

}  // namespace mbd::cli

#endif  // MBDCLI_EXPERIMENT_H_
