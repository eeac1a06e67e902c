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

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "physchan/commands.hpp"

int main(int argc, char** argv) {
  using physchan::Grid;
  using physchan::Noise;
  using physchan::TraceMode;

  CLI::App app{"physchan: convex reconstruction of qubit states and channels from photon counts"};
  app.require_subcommand(1);

  physchan::RunConfig config;
  std::string target, chi;
  int max_iters = 0;
  double tol = 0.0;

  const std::map<std::string, TraceMode> trace_modes{{"eq", TraceMode::equality},
                                                     {"le", TraceMode::inequality}};
  const std::map<std::string, Grid> grids{{"4x4", Grid::g4x4}, {"6x6", Grid::g6x6}};
  const std::map<std::string, Noise> noises{{"poisson", Noise::poisson}, {"none", Noise::none}};

  for (const auto& name : physchan::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--input", config.input, "input dataset or chi file");
    sub->add_option("--output", config.output, "result file (JSON); CSV tables are written beside it")
        ->required();
    sub->add_option("--seed", config.seed, "random seed");
    sub->add_option("--trials", config.trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
    sub->add_option("--trace-mode", config.trace_mode, "Tr(chi) = 1 (eq) or <= 1 (le)")
        ->transform(CLI::CheckedTransformer(trace_modes, CLI::ignore_case));
    sub->add_option("--max-iters", max_iters, "solver iteration cap")->check(CLI::PositiveNumber);
    sub->add_option("--tol", tol, "solver gradient tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--channel", config.channel,
                    "identity | bitflip(p) | phaseflip(p) | depolarizing(p) | file:<chi.json>");
    sub->add_option("--n-photons", config.photons, "photons per configuration");
    sub->add_option("--grid", config.grid, "simulated grid")
        ->transform(CLI::CheckedTransformer(grids, CLI::ignore_case));
    sub->add_option("--noise", config.noise, "simulated noise")
        ->transform(CLI::CheckedTransformer(noises, CLI::ignore_case));
    sub->add_option("--target", target, "reference chi file (default: ideal channel)");
    sub->add_option("--chi", chi, "model chi file (default: fit the input counts)");
    sub->add_option("--workers", config.workers, "Monte-Carlo worker threads (0 = all cores)");
    sub->callback([&config, sub] { config.command = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: E_ARGS: " << e.what() << '\n';
    return 2;
  }

  if (!target.empty()) config.target = target;
  if (!chi.empty()) config.chi = chi;
  if (max_iters > 0) config.max_iters = max_iters;
  if (tol > 0.0) config.tol = tol;
  return physchan::run_command(config, std::cerr);
}
