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

#include "physchan/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>

#include "physchan/error.hpp"
#include "physchan/inversion.hpp"

namespace physchan {

void SolverSettings::validate() const {
  auto fail = [](const char* what) { throw Error(ErrorCode::invalid_argument, what); };
  if (max_iterations < 1) fail("solver: max_iterations must be positive");
  if (!(gradient_tolerance > 0.0)) fail("solver: gradient_tolerance must be positive");
  if (!(objective_tolerance > 0.0)) fail("solver: objective_tolerance must be positive");
  if (objective_window < 1) fail("solver: objective_window must be positive");
  if (!(initial_step > 0.0)) fail("solver: initial_step must be positive");
  if (!(shrink > 0.0 && shrink < 1.0)) fail("solver: shrink must lie in (0, 1)");
  if (!(sufficient_decrease > 0.0 && sufficient_decrease < 1.0)) {
    fail("solver: sufficient_decrease must lie in (0, 1)");
  }
  if (!(probability_floor > 0.0)) fail("solver: probability_floor must be positive");
  if (trace_stride < 1) fail("solver: trace_stride must be positive");
}

MinimizeResult minimize_projected(const SmoothObjective& objective, const HermitianMatrix& start,
                                  const SolverSettings& settings) {
  settings.validate();
  const auto clock_start = std::chrono::steady_clock::now();
  const auto project = [&](const HermitianMatrix& a) {
    return project_density(a, settings.trace_mode);
  };

  HermitianMatrix x = project(start);
  HermitianMatrix x_prev = x;
  double fx = objective.value(x);
  HermitianMatrix gx = objective.gradient(x);

  SolverReport report;
  report.initial_objective = fx;
  report.objective_trace.push_back(fx);

  const double gradient_scale = std::max(1.0, gx.frobenius_norm());
  const double tolerance = settings.gradient_tolerance * gradient_scale;
  double step = settings.initial_step;
  double momentum = 1.0;
  std::deque<double> window{fx};

  int iteration = 0;
  for (; iteration < settings.max_iterations; ++iteration) {
    step = std::min(settings.initial_step, step / settings.shrink);

    // Gradient mapping at the current point doubles as the stopping test.
    // Rounding slack so the search does not collapse once x is optimal.
    const double slack = 1e-14 * std::max(1.0, std::abs(fx));
    HermitianMatrix trial = project(x - step * gx);
    while (objective.value(trial) >
           fx + settings.sufficient_decrease * inner(gx, trial - x) + slack) {
      step *= settings.shrink;
      if (step < 1e-30) break;
      trial = project(x - step * gx);
    }
    report.gradient_mapping_norm = (trial - x).frobenius_norm() / step;
    if (report.gradient_mapping_norm <= tolerance) {
      report.converged = true;
      report.stop_reason = "gradient mapping below tolerance";
      break;
    }

    HermitianMatrix next = trial;
    double fnext = objective.value(trial);
    if (settings.acceleration && iteration > 0) {
      const double momentum_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
      const double beta = (momentum - 1.0) / momentum_next;
      const HermitianMatrix y = x + beta * (x - x_prev);
      const double fy = objective.value(y);
      const HermitianMatrix gy = objective.gradient(y);
      double ystep = step;
      HermitianMatrix z = project(y - ystep * gy);
      for (;;) {
        const HermitianMatrix dz = z - y;
        const double bound = fy + inner(gy, dz) + inner(dz, dz) / (2.0 * ystep);
        if (objective.value(z) <= bound + slack || ystep < 1e-30) break;
        ystep *= settings.shrink;
        z = project(y - ystep * gy);
      }
      const double fz = objective.value(z);
      if (fz <= fnext) {
        next = std::move(z);
        fnext = fz;
        momentum = momentum_next;
      } else {
        momentum = 1.0;
      }
    }

    if (fnext > fx) {
      // Only reachable through rounding at the optimum; keep the iterate.
      next = x;
      fnext = fx;
      momentum = 1.0;
    }
    x_prev = std::move(x);
    x = std::move(next);
    fx = fnext;
    gx = objective.gradient(x);

    if ((iteration + 1) % settings.trace_stride == 0) report.objective_trace.push_back(fx);

    window.push_back(fx);
    if (static_cast<int>(window.size()) > settings.objective_window + 1) window.pop_front();
    if (static_cast<int>(window.size()) == settings.objective_window + 1) {
      const double decrease = window.front() - fx;
      if (decrease <= settings.objective_tolerance * std::abs(fx)) {
        report.converged = true;
        report.stop_reason = "objective stalled";
        ++iteration;
        break;
      }
    }
  }
  if (!report.converged) report.stop_reason = "iteration cap reached";
  if (report.objective_trace.back() != fx) report.objective_trace.push_back(fx);

  report.iterations = iteration;
  report.final_objective = fx;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  return {std::move(x), std::move(report)};
}

// ---------------------------------------------------------------------------
// State tomography

double qst_objective(const HermitianMatrix& rho, const StateCounts& counts,
                     double probability_floor) {
  double total = 0.0;
  for (const auto& r : counts.records()) {
    const double n = static_cast<double>(r.count);
    const double photons = static_cast<double>(r.photons);
    const double p = rho.expectation(ket(r.projector));
    const double residual = photons * p - n;
    total += residual * residual / (2.0 * photons * std::max(p, probability_floor));
  }
  return total;
}

HermitianMatrix qst_gradient(const HermitianMatrix& rho, const StateCounts& counts,
                             double probability_floor) {
  HermitianMatrix grad = HermitianMatrix::zero(rho.dim());
  for (const auto& r : counts.records()) {
    const double n = static_cast<double>(r.count);
    const double photons = static_cast<double>(r.photons);
    const auto psi = ket(r.projector);
    const double p = rho.expectation(psi);
    double dp;
    if (p >= probability_floor) {
      dp = 0.5 * photons - n * n / (2.0 * photons * p * p);
    } else {
      dp = (photons * p - n) / probability_floor;
    }
    grad += dp * HermitianMatrix::projector(psi);
  }
  return grad;
}

StateEstimate qst_solve(const StateCounts& counts, const SolverSettings& settings) {
  const double floor = settings.probability_floor;
  SmoothObjective objective{
      [&](const HermitianMatrix& rho) { return qst_objective(rho, counts, floor); },
      [&](const HermitianMatrix& rho) { return qst_gradient(rho, counts, floor); }};
  SolverSettings state_settings = settings;
  state_settings.trace_mode = TraceMode::equality;
  auto result = minimize_projected(objective, qst_linear_inversion(counts), state_settings);
  return {DensityMatrix(std::move(result.solution)), std::move(result.report)};
}

// ---------------------------------------------------------------------------
// Process tomography

namespace {

struct CellData {
  std::size_t i, j;
  double frequency;  // (n − N p)²/N² = (f − p)² with f = n/N
};

std::vector<CellData> cells_for(const ProcessCounts& counts, const CoefficientTensor& tensor) {
  std::vector<CellData> cells;
  cells.reserve(tensor.input_count() * tensor.projector_count());
  for (std::size_t i = 0; i < tensor.input_count(); ++i) {
    for (std::size_t j = 0; j < tensor.projector_count(); ++j) {
      const auto& r = counts.at(tensor.inputs()[i], tensor.projectors()[j]);
      cells.push_back({i, j, r.frequency()});
    }
  }
  return cells;
}

}  // namespace

double qpt_objective(const HermitianMatrix& chi, const ProcessCounts& counts,
                     const CoefficientTensor& tensor) {
  double total = 0.0;
  for (const auto& c : cells_for(counts, tensor)) {
    const double r = c.frequency - tensor.probability(c.i, c.j, chi);
    total += r * r;
  }
  return total;
}

HermitianMatrix qpt_gradient(const HermitianMatrix& chi, const ProcessCounts& counts,
                             const CoefficientTensor& tensor) {
  HermitianMatrix grad = HermitianMatrix::zero(chi.dim());
  for (const auto& c : cells_for(counts, tensor)) {
    const double r = tensor.probability(c.i, c.j, chi) - c.frequency;
    grad += (2.0 * r) * tensor.gradient_matrix(c.i, c.j);
  }
  return grad;
}

const CoefficientTensor& tomographic_tensor() {
  static const CoefficientTensor tensor(kTomographicStates, kTomographicStates);
  return tensor;
}

ProcessEstimate qpt_solve(const ProcessCounts& counts, const SolverSettings& settings,
                          const std::optional<HermitianMatrix>& start) {
  const auto& tensor = tomographic_tensor();
  const auto cells = cells_for(counts, tensor);
  std::vector<HermitianMatrix> gradients;
  gradients.reserve(cells.size());
  for (const auto& c : cells) gradients.push_back(tensor.gradient_matrix(c.i, c.j));

  SmoothObjective objective{
      [&](const HermitianMatrix& chi) {
        double total = 0.0;
        for (std::size_t k = 0; k < cells.size(); ++k) {
          const double r = cells[k].frequency - inner(gradients[k], chi);
          total += r * r;
        }
        return total;
      },
      [&](const HermitianMatrix& chi) {
        HermitianMatrix grad = HermitianMatrix::zero(chi.dim());
        for (std::size_t k = 0; k < cells.size(); ++k) {
          const double r = inner(gradients[k], chi) - cells[k].frequency;
          grad += (2.0 * r) * gradients[k];
        }
        return grad;
      }};

  const HermitianMatrix initial =
      start ? *start : HermitianMatrix(qpt_standard_inversion(counts).chi.matrix());
  auto result = minimize_projected(objective, initial, settings);
  const auto kind = settings.trace_mode == TraceMode::equality ? ChiKind::physical
                                                               : ChiKind::trace_non_increasing;
  return {ChiMatrix(std::move(result.solution), kind), std::move(result.report)};
}

double trace_relaxation_check(const ProcessCounts& counts, const SolverSettings& settings) {
  SolverSettings eq = settings;
  eq.trace_mode = TraceMode::equality;
  SolverSettings le = settings;
  le.trace_mode = TraceMode::inequality;
  const auto a = qpt_solve(counts, eq);
  const auto b = qpt_solve(counts, le);
  return frobenius_distance(a.chi.matrix(), b.chi.matrix());
}

}  // namespace physchan
