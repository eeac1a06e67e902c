// Copyright 2026 The physchan Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "physchan/dataset.hpp"
#include "physchan/solver.hpp"

namespace physchan {

/// Everything one CLI invocation needs. Written verbatim into each result
/// file under "config".
struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  /// Reference χ for fidelity / montecarlo (default: ideal channel).
  std::optional<std::string> target;
  /// Model χ for deviation / residual (default: fitted from the input).
  std::optional<std::string> chi;
  std::uint64_t seed = 1;
  int trials = 100;
  TraceMode trace_mode = TraceMode::equality;
  std::optional<int> max_iters;
  std::optional<double> tol;
  std::string channel = "identity";
  Count photons = 10000;
  Grid grid = Grid::g4x4;
  Noise noise = Noise::poisson;
  unsigned workers = 0;
};

const std::vector<std::string>& command_names();

nlohmann::json to_json(const RunConfig& config);
SolverSettings solver_settings(const RunConfig& config);

/// Sidecar table path: "out.json" + "objective" → "out.objective.csv".
std::filesystem::path table_path(const std::filesystem::path& output, const std::string& table);

/// Runs one subcommand; throws physchan::Error on failure.
void execute(const RunConfig& config);

/// execute() with failures reported as one line "error: <CODE>: <message>"
/// on `diagnostics`. Returns the process exit status.
int run_command(const RunConfig& config, std::ostream& diagnostics);

}  // namespace physchan
