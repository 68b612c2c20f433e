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

#include "mbd/trace_io.h"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mbd/error.h"

namespace mbd {

namespace {

std::string g17(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double(const std::string& field, const char* what) {
  try {
    std::size_t used = 0;
    double value = std::stod(field, &used);
    if (used == 0) throw std::invalid_argument(field);
    return value;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kIoError,
                std::string("cannot parse ") + what + " from '" + field + "'");
  }
}

// "# key=rest-of-line" comment headers
bool parse_comment(const std::string& line, std::string* key,
                   std::string* value) {
  if (line.empty() || line[0] != '#') return false;
  std::size_t start = line.find_first_not_of(" \t", 1);
  if (start == std::string::npos) return false;
  std::size_t eq = line.find('=', start);
  if (eq == std::string::npos) return false;
  *key = line.substr(start, eq - start);
  *value = line.substr(eq + 1);
  return true;
}

}  // namespace

void write_trace_csv(std::ostream& out, const DiffusionTrace& trace) {
  out << "step,j_min,j_mean_batch,ess,y_norm\n";
  for (const TraceRecord& record : trace.records) {
    out << record.step << ',' << g17(record.j_min) << ','
        << g17(record.j_mean_batch) << ',' << g17(record.ess) << ','
        << g17(record.iterate.norm()) << '\n';
  }
}

std::vector<TraceRow> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line != "step,j_min,j_mean_batch,ess,y_norm") {
    throw Error(ErrorCode::kIoError, "bad trace csv header");
  }
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 5) {
      throw Error(ErrorCode::kIoError, "trace csv row needs 5 fields");
    }
    TraceRow row;
    row.step = static_cast<int>(parse_double(fields[0], "step"));
    row.j_min = parse_double(fields[1], "j_min");
    row.j_mean_batch = parse_double(fields[2], "j_mean_batch");
    row.ess = parse_double(fields[3], "ess");
    row.y_norm = parse_double(fields[4], "y_norm");
    rows.push_back(row);
  }
  return rows;
}

void write_trajectory_csv(std::ostream& out, const TaskSpec& task,
                          const Trajectory& traj) {
  int n_x = static_cast<int>(traj.states.cols());
  int n_u = static_cast<int>(traj.controls.cols());
  out << 't';
  for (int j = 0; j < n_x; ++j) out << ",x" << j;
  for (int j = 0; j < n_u; ++j) out << ",u" << j;
  out << ",l";
  for (int j = 0; j < task.n_constraints; ++j) out << ",g" << j;
  out << '\n';

  Eigen::VectorXd x_prev = task.x_init;
  for (Eigen::Index t = 0; t < traj.states.rows(); ++t) {
    Eigen::VectorXd u = traj.controls.row(t).transpose();
    out << t;
    for (int j = 0; j < n_x; ++j) out << ',' << g17(traj.states(t, j));
    for (int j = 0; j < n_u; ++j) out << ',' << g17(u[j]);
    out << ',' << g17(task.stage_cost(x_prev, u, static_cast<int>(t)));
    if (task.n_constraints > 0) {
      Eigen::VectorXd g = task.constraint(traj.states.row(t).transpose(), u);
      for (int j = 0; j < task.n_constraints; ++j) out << ',' << g17(g[j]);
    }
    out << '\n';
    x_prev = traj.states.row(t).transpose();
  }
}

void write_demonstration_csv(std::ostream& out, const Demonstration& demo) {
  out << "# sigma=" << g17(demo.sigma) << '\n';
  out << "# demo_cost=" << g17(demo.demo_cost) << '\n';
  out << "# demo_violation=" << g17(demo.demo_violation) << '\n';
  out << "# state_scale=";
  for (Eigen::Index j = 0; j < demo.state_scale.size(); ++j) {
    if (j > 0) out << ' ';
    out << g17(demo.state_scale[j]);
  }
  out << '\n';

  int n_x = static_cast<int>(demo.values.cols());
  out << 't';
  for (int j = 0; j < n_x; ++j) out << ",x" << j;
  for (int j = 0; j < n_x; ++j) out << ",m" << j;
  out << '\n';
  for (Eigen::Index t = 0; t < demo.values.rows(); ++t) {
    out << t;
    for (int j = 0; j < n_x; ++j) out << ',' << g17(demo.values(t, j));
    for (int j = 0; j < n_x; ++j) out << ',' << (demo.mask(t, j) ? 1 : 0);
    out << '\n';
  }
}

Demonstration read_demonstration_csv(std::istream& in) {
  Demonstration demo;
  std::vector<double> scale;
  std::string line;
  std::string header;
  while (std::getline(in, line)) {
    std::string key;
    std::string value;
    if (parse_comment(line, &key, &value)) {
      if (key == "sigma") {
        demo.sigma = parse_double(value, "sigma");
      } else if (key == "demo_cost") {
        demo.demo_cost = parse_double(value, "demo_cost");
      } else if (key == "demo_violation") {
        demo.demo_violation = parse_double(value, "demo_violation");
      } else if (key == "state_scale") {
        std::stringstream ss(value);
        std::string token;
        while (ss >> token) scale.push_back(parse_double(token, "state_scale"));
      }
      continue;
    }
    header = line;
    break;
  }
  if (header.empty()) {
    throw Error(ErrorCode::kIoError, "demonstration csv has no column header");
  }
  std::vector<std::string> columns = split_csv_line(header);
  if (columns.size() < 3 || columns[0] != "t" || columns.size() % 2 == 0) {
    throw Error(ErrorCode::kIoError, "bad demonstration csv header");
  }
  int n_x = static_cast<int>((columns.size() - 1) / 2);

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != 1 + 2 * n_x) {
      throw Error(ErrorCode::kIoError, "demonstration csv row width mismatch");
    }
    std::vector<double> row;
    for (std::size_t j = 1; j < fields.size(); ++j) {
      row.push_back(parse_double(fields[j], "demonstration entry"));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw Error(ErrorCode::kIoError, "demonstration csv has no rows");
  }

  int T = static_cast<int>(rows.size());
  demo.values.resize(T, n_x);
  demo.mask.resize(T, n_x);
  for (int t = 0; t < T; ++t) {
    for (int j = 0; j < n_x; ++j) {
      demo.values(t, j) = rows[t][j];
      demo.mask(t, j) = rows[t][n_x + j] != 0.0;
    }
  }
  demo.state_scale =
      scale.empty()
          ? Eigen::VectorXd::Ones(n_x)
          : Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(
                scale.data(), static_cast<Eigen::Index>(scale.size())));
  if (demo.state_scale.size() != n_x) {
    throw Error(ErrorCode::kIoError,
                "state_scale length does not match the state dimension");
  }
  if (!(demo.sigma > 0.0)) {
    throw Error(ErrorCode::kIoError, "sigma must be positive");
  }
  return demo;
}

void write_path_csv(std::ostream& out,
                    const std::vector<Eigen::Vector2d>& path) {
  out << "x,y\n";
  for (const Eigen::Vector2d& p : path) {
    out << g17(p.x()) << ',' << g17(p.y()) << '\n';
  }
}

}  // namespace mbd
