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

#ifndef MBD_TRACE_IO_H_
#define MBD_TRACE_IO_H_

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "mbd/demos.h"
#include "mbd/diffusion.h"
#include "mbd/dynamics.h"

// CSV serialization for run artifacts. Everything reads/writes streams;
// opening files is the CLI's job. Numbers are written with 17 significant
// digits so round-trips are bit-exact.

namespace mbd {

// columns: step, j_min, j_mean_batch, ess, y_norm (euclidean norm of the
// pre-update iterate)
void write_trace_csv(std::ostream& out, const DiffusionTrace& trace);

struct TraceRow {
  int step = 0;
  double j_min = 0.0;
  double j_mean_batch = 0.0;
  double ess = 0.0;
  double y_norm = 0.0;
};

std::vector<TraceRow> read_trace_csv(std::istream& in);

// columns: t, x..., u..., l, g... where row t holds the visited state
// x_{t+1}, the control u_t that produced it, the stage cost paid at step t,
// and the constraint values at (x_{t+1}, u_t)
void write_trajectory_csv(std::ostream& out, const TaskSpec& task,
                          const Trajectory& traj);

// comment header (sigma, demo_cost, demo_violation, state_scale) followed by
// columns t, x..., m... with the mask as 0/1
void write_demonstration_csv(std::ostream& out, const Demonstration& demo);
Demonstration read_demonstration_csv(std::istream& in);

// columns: x, y
void write_path_csv(std::ostream& out,
                    const std::vector<Eigen::Vector2d>& path);

}  // namespace mbd

#endif  // MBD_TRACE_IO_H_
