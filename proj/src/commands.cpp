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

#include "physchan/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "physchan/error.hpp"
#include "physchan/inversion.hpp"
#include "physchan/metrics.hpp"

namespace physchan {

using nlohmann::json;

namespace {

std::shared_ptr<spdlog::logger> log() {
  static const auto logger = [] {
    auto l = spdlog::stderr_logger_mt("physchan");
    l->set_pattern("[%l] %v");
    const char* env = std::getenv("PHYSCHAN_LOG");
    const std::string level = env ? env : "off";
    if (level == "debug") {
      l->set_level(spdlog::level::debug);
    } else if (level == "info") {
      l->set_level(spdlog::level::info);
    } else {
      l->set_level(spdlog::level::off);
    }
    return l;
  }();
  return logger;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::string_view trace_mode_name(TraceMode m) { return m == TraceMode::equality ? "eq" : "le"; }

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header)
      : path_(path), out_(path) {
    if (!out_) throw Error(ErrorCode::io_error, "cannot write " + path.string());
    out_ << std::setprecision(17);
    bool first = true;
    for (auto h : header) {
      out_ << (first ? "" : ",") << h;
      first = false;
    }
    out_ << '\n';
  }

  template <class... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cells, first = false), ...);
    out_ << '\n';
    if (!out_) throw Error(ErrorCode::io_error, "write failed for " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

json report_to_json(const SolverReport& r) {
  return json{{"iterations", r.iterations},
              {"initial_objective", r.initial_objective},
              {"final_objective", r.final_objective},
              {"gradient_mapping_norm", r.gradient_mapping_norm},
              {"converged", r.converged},
              {"stop_reason", r.stop_reason},
              {"wall_seconds", r.wall_seconds}};
}

json eigen_json(const EigenvalueReport& e) {
  return json{{"eigenvalues", e.eigenvalues}, {"physical", e.physical}};
}

void write_objective_trace(const RunConfig& c, const SolverReport& r) {
  CsvWriter csv(table_path(c.output, "objective"), {"sample", "objective"});
  for (std::size_t k = 0; k < r.objective_trace.size(); ++k) csv.row(k, r.objective_trace[k]);
}

void write_eigen_table(const RunConfig& c, const EigenvalueReport& e) {
  CsvWriter csv(table_path(c.output, "eigenvalues"), {"index", "eigenvalue", "physical"});
  for (std::size_t k = 0; k < e.eigenvalues.size(); ++k) {
    csv.row(k, e.eigenvalues[k], e.eigenvalues[k] >= -kPsdTolerance ? "true" : "false");
  }
}

json result_header(const RunConfig& c) {
  return json{{"schema_version", std::string(kSchemaVersion)},
              {"command", c.command},
              {"config", to_json(c)}};
}

void require_input(const RunConfig& c) {
  if (c.input.empty()) throw Error(ErrorCode::invalid_argument, c.command + ": --input is required");
}

ProcessCounts load_process_counts(const RunConfig& c) {
  require_input(c);
  auto parsed = parse_dataset(c.input);
  if (!std::holds_alternative<ProcessCounts>(parsed)) {
    throw Error(ErrorCode::schema_error, c.input + ": expected a process_counts dataset");
  }
  return std::get<ProcessCounts>(std::move(parsed));
}

StateCounts load_state_counts(const RunConfig& c) {
  require_input(c);
  auto parsed = parse_dataset(c.input);
  if (!std::holds_alternative<StateCounts>(parsed)) {
    throw Error(ErrorCode::schema_error, c.input + ": expected a state_counts dataset");
  }
  return std::get<StateCounts>(std::move(parsed));
}

ChiMatrix load_chi(const std::string& path) { return chi_from_json(read_json(path)); }

ProcessEstimate fit(const RunConfig& c, const ProcessCounts& counts) {
  const auto est = qpt_solve(counts.restrict_to(kTomographicStates, kTomographicStates),
                             solver_settings(c));
  log()->info("qpt fit: {} iterations, objective {:.6g}, {}", est.report.iterations,
              est.report.final_objective, est.report.stop_reason);
  if (!est.report.converged) log()->warn("qpt fit hit the iteration cap");
  return est;
}

// --- subcommands -----------------------------------------------------------

void cmd_simulate(const RunConfig& c) {
  const auto chi = parse_channel(c.channel);
  write_dataset(c.output, simulate(chi, c.photons, c.seed, c.grid, c.noise));
}

void cmd_qst(const RunConfig& c) {
  const auto counts = load_state_counts(c);
  const auto est = qst_solve(counts, solver_settings(c));
  const auto eig = eigenvalue_report(est.rho.matrix());
  auto out = result_header(c);
  out["rho"] = matrix_to_json(est.rho.matrix().matrix());
  out["linear_inversion"] = matrix_to_json(qst_linear_inversion(counts).matrix());
  out["solver"] = report_to_json(est.report);
  out["spectrum"] = eigen_json(eig);
  write_objective_trace(c, est.report);
  write_eigen_table(c, eig);
  write_json(c.output, out);
}

void cmd_qpt(const RunConfig& c) {
  const auto counts = load_process_counts(c);
  const auto est = fit(c, counts);
  const auto eig = eigenvalue_report(est.chi.matrix());
  auto out = result_header(c);
  out["chi"] = chi_to_json(est.chi);
  out["solver"] = report_to_json(est.report);
  out["spectrum"] = eigen_json(eig);
  out["trace"] = est.chi.matrix().trace();
  write_objective_trace(c, est.report);
  write_eigen_table(c, eig);
  write_json(c.output, out);
}

void cmd_invert_qst(const RunConfig& c) {
  const auto rho = qst_linear_inversion(load_state_counts(c));
  const auto eig = eigenvalue_report(rho);
  auto out = result_header(c);
  out["rho"] = matrix_to_json(rho.matrix());
  out["spectrum"] = eigen_json(eig);
  write_eigen_table(c, eig);
  write_json(c.output, out);
}

void cmd_invert_qpt(const RunConfig& c) {
  const auto inv = qpt_standard_inversion(load_process_counts(c));
  const auto warning = inv.warning();
  if (!warning.empty()) log()->warn("standard inversion: {}", warning);
  const auto eig = eigenvalue_report(inv.chi.matrix());
  auto out = result_header(c);
  out["chi"] = chi_to_json(inv.chi);
  out["spectrum"] = eigen_json(eig);
  out["rank"] = inv.rank;
  out["residual_norm"] = inv.residual_norm;
  out["warning"] = warning;
  write_eigen_table(c, eig);
  write_json(c.output, out);
}

void cmd_fidelity(const RunConfig& c) {
  require_input(c);
  const auto chi = load_chi(c.input);
  const auto target = c.target ? load_chi(*c.target) : chi_ideal(chi.qubits());
  auto out = result_header(c);
  out["process_fidelity"] = process_fidelity(chi, target);
  write_json(c.output, out);
}

void cmd_deviation(const RunConfig& c) {
  const auto counts = load_process_counts(c);
  const auto settings = solver_settings(c);
  const auto experimental = experimental_states(counts, kTomographicStates, settings);
  const auto model = c.chi ? load_chi(*c.chi) : fit(c, counts).chi;
  const auto inversion = qpt_standard_inversion(counts).chi;
  const ChiMatrix projected(project_density(inversion.matrix()));

  auto out = result_header(c);
  json per_input = json::array();
  CsvWriter csv(table_path(c.output, "deviation"),
                {"input", "model", "inversion", "projected_inversion"});
  for (std::size_t k = 0; k < kTomographicStates.size(); ++k) {
    const auto in = kTomographicStates[k];
    const std::span<const Polarization> one(&kTomographicStates[k], 1);
    const std::span<const HermitianMatrix> exp(&experimental[k], 1);
    const double dm = average_state_deviation(model, one, exp);
    const double di = average_state_deviation(inversion, one, exp);
    const double dp = average_state_deviation(projected, one, exp);
    csv.row(to_string(in), dm, di, dp);
    per_input.push_back({{"input", std::string(to_string(in))},
                         {"experimental_state", matrix_to_json(experimental[k].matrix())},
                         {"model", dm},
                         {"inversion", di},
                         {"projected_inversion", dp}});
  }
  out["model_chi"] = chi_to_json(model);
  out["average_deviation"] = {
      {"model", average_state_deviation(model, kTomographicStates, experimental)},
      {"inversion", average_state_deviation(inversion, kTomographicStates, experimental)},
      {"projected_inversion", average_state_deviation(projected, kTomographicStates, experimental)}};
  out["per_input"] = std::move(per_input);
  write_json(c.output, out);
}

void cmd_residual(const RunConfig& c) {
  const auto counts = load_process_counts(c);
  const auto model = c.chi ? load_chi(*c.chi) : fit(c, counts).chi;
  const auto inversion = qpt_standard_inversion(counts).chi;
  const auto model_set = residual_set(model, counts);
  const auto inversion_set = residual_set(inversion, counts);

  CsvWriter table(table_path(c.output, "residuals"), {"input", "projector", "model", "inversion"});
  for (std::size_t i = 0; i < model_set.inputs.size(); ++i) {
    for (std::size_t j = 0; j < model_set.projectors.size(); ++j) {
      table.row(to_string(model_set.inputs[i]), to_string(model_set.projectors[j]),
                model_set.at(i, j), inversion_set.at(i, j));
    }
  }
  CsvWriter hist(table_path(c.output, "histogram"), {"lower", "upper", "count"});
  for (const auto& b : histogram(model_set.residuals, 12)) hist.row(b.lower, b.upper, b.count);

  auto summary = [](const ResidualSet& s) {
    return json{{"mean", s.mean}, {"sigma", s.sigma}, {"skewness", s.skewness}, {"residuals", s.residuals}};
  };
  auto out = result_header(c);
  out["model_chi"] = chi_to_json(model);
  out["model"] = summary(model_set);
  out["inversion"] = summary(inversion_set);
  write_json(c.output, out);
}

void cmd_montecarlo(const RunConfig& c) {
  const auto counts = load_process_counts(c);
  const auto target = c.target ? load_chi(*c.target) : chi_ideal(1);
  const auto mc = monte_carlo_fidelity(counts.restrict_to(kTomographicStates, kTomographicStates),
                                       target, c.trials, c.seed, solver_settings(c), c.workers);
  if (!mc.failed_trials.empty()) log()->warn("{} Monte-Carlo trials failed", mc.failed_trials.size());

  CsvWriter csv(table_path(c.output, "trials"), {"sample", "fidelity"});
  for (std::size_t k = 0; k < mc.fidelities.size(); ++k) csv.row(k, mc.fidelities[k]);
  auto out = result_header(c);
  out["monte_carlo"] = {{"trials", mc.trials},       {"seed", mc.seed},
                        {"mean", mc.mean},           {"stddev", mc.stddev},
                        {"fidelities", mc.fidelities}, {"failed_trials", mc.failed_trials}};
  write_json(c.output, out);
}

void cmd_eigreport(const RunConfig& c) {
  require_input(c);
  const auto chi = load_chi(c.input);
  const auto eig = eigenvalue_report(chi.matrix());
  write_eigen_table(c, eig);
  auto out = result_header(c);
  out["spectrum"] = eigen_json(eig);
  write_json(c.output, out);
}

const std::map<std::string, std::function<void(const RunConfig&)>>& registry() {
  static const std::map<std::string, std::function<void(const RunConfig&)>> table = {
      {"simulate", cmd_simulate},       {"qst", cmd_qst},
      {"qpt", cmd_qpt},                 {"invert-qst", cmd_invert_qst},
      {"invert-qpt", cmd_invert_qpt},   {"fidelity", cmd_fidelity},
      {"deviation", cmd_deviation},     {"residual", cmd_residual},
      {"montecarlo", cmd_montecarlo},   {"eigreport", cmd_eigreport},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"qst",       "qpt",      "invert-qst", "invert-qpt",
                                                 "fidelity",  "deviation", "residual",  "montecarlo",
                                                 "simulate",  "eigreport"};
  return names;
}

json to_json(const RunConfig& c) {
  json j{{"command", c.command},
         {"input", c.input},
         {"output", c.output},
         {"seed", c.seed},
         {"trials", c.trials},
         {"trace_mode", std::string(trace_mode_name(c.trace_mode))},
         {"channel", c.channel},
         {"n_photons", c.photons},
         {"grid", c.grid == Grid::g4x4 ? "4x4" : "6x6"},
         {"noise", c.noise == Noise::poisson ? "poisson" : "none"}};
  j["target"] = c.target ? json(*c.target) : json(nullptr);
  j["chi"] = c.chi ? json(*c.chi) : json(nullptr);
  j["max_iters"] = c.max_iters ? json(*c.max_iters) : json(nullptr);
  j["tol"] = c.tol ? json(*c.tol) : json(nullptr);
  return j;
}

SolverSettings solver_settings(const RunConfig& c) {
  SolverSettings s;
  s.trace_mode = c.trace_mode;
  if (c.max_iters) s.max_iterations = *c.max_iters;
  if (c.tol) s.gradient_tolerance = *c.tol;
  s.validate();
  return s;
}

std::filesystem::path table_path(const std::filesystem::path& output, const std::string& table) {
  auto p = output;
  if (p.extension() == ".json") p.replace_extension();
  p += "." + table + ".csv";
  return p;
}

void execute(const RunConfig& config) {
  const auto it = registry().find(config.command);
  if (it == registry().end()) {
    throw Error(ErrorCode::invalid_argument, "unknown command \"" + config.command + "\"");
  }
  if (config.output.empty()) {
    throw Error(ErrorCode::invalid_argument, config.command + ": --output is required");
  }
  log()->info("{}: input={} output={}", config.command, config.input, config.output);
  it->second(config);
}

int run_command(const RunConfig& config, std::ostream& diagnostics) {
  try {
    execute(config);
    return 0;
  } catch (const Error& e) {
    diagnostics << "error: " << to_string(e.code()) << ": " << one_line(e.what()) << '\n';
    return 1;
  } catch (const std::exception& e) {
    diagnostics << "error: E_INTERNAL: " << one_line(e.what()) << '\n';
    return 1;
  }
}

}  // namespace physchan
