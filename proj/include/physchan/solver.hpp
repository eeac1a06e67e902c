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

// Constrained tomography fits. Both state and process estimation minimize a
// smooth objective over {X ⪰ 0, Tr X = 1} (or Tr X ≤ 1) with projected
// gradient descent; the projection is project_density.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "physchan/counts.hpp"
#include "physchan/linalg.hpp"
#include "physchan/quantum.hpp"

namespace physchan {

struct SolverSettings {
  int max_iterations = 20000;
  /// Stop when the gradient-mapping norm falls below this, relative to
  /// max(1, ‖∇F(x₀)‖_F).
  double gradient_tolerance = 1e-9;
  /// Stop when the objective decreased by less than this fraction over the
  /// last `objective_window` iterations.
  double objective_tolerance = 1e-12;
  int objective_window = 50;
  double initial_step = 1.0;
  double shrink = 0.5;
  double sufficient_decrease = 1e-4;
  /// Nesterov momentum with restart whenever a step would raise the objective.
  bool acceleration = true;
  /// ε in the max(p, ε) denominator clamp of the state objective.
  double probability_floor = 1e-9;
  TraceMode trace_mode = TraceMode::equality;
  /// Record every k-th accepted objective value.
  int trace_stride = 1;

  /// Throws Error(invalid_argument) when a field is out of range.
  void validate() const;
};

struct SolverReport {
  int iterations = 0;
  double initial_objective = 0.0;
  double final_objective = 0.0;
  double gradient_mapping_norm = 0.0;
  /// Objective after each recorded iteration, starting with the initial point.
  std::vector<double> objective_trace;
  bool converged = false;
  std::string stop_reason;
  double wall_seconds = 0.0;
};

struct SmoothObjective {
  std::function<double(const HermitianMatrix&)> value;
  std::function<HermitianMatrix(const HermitianMatrix&)> gradient;
};

struct MinimizeResult {
  HermitianMatrix solution;
  SolverReport report;
};

/// Projected gradient descent from project_density(start). Every iterate is
/// feasible and accepted objective values never increase. Deterministic.
MinimizeResult minimize_projected(const SmoothObjective& objective, const HermitianMatrix& start,
                                  const SolverSettings& settings);

/// L(ρ) = Σ_i [N_i p_i − n_i]² / (2 N_i max(p_i, ε)), p_i = ⟨ψ_i|ρ|ψ_i⟩.
double qst_objective(const HermitianMatrix& rho, const StateCounts& counts,
                     double probability_floor = 1e-9);
HermitianMatrix qst_gradient(const HermitianMatrix& rho, const StateCounts& counts,
                             double probability_floor = 1e-9);

struct StateEstimate {
  DensityMatrix rho;
  SolverReport report;
};

/// Maximum-likelihood state under the Gaussian noise model, warm-started from
/// the projected linear-inversion estimate.
StateEstimate qst_solve(const StateCounts& counts, const SolverSettings& settings = {});

/// F(χ) = Σ_ij (1/N_ij²) [n_ij − N_ij Σ_mn A[i][j][m][n] χ_mn]² over every
/// cell of `tensor`; `counts` must contain each of those cells.
double qpt_objective(const HermitianMatrix& chi, const ProcessCounts& counts,
                     const CoefficientTensor& tensor);
HermitianMatrix qpt_gradient(const HermitianMatrix& chi, const ProcessCounts& counts,
                             const CoefficientTensor& tensor);

/// The tensor over the {H, V, D, R} tomographic grid used by qpt_solve.
const CoefficientTensor& tomographic_tensor();

struct ProcessEstimate {
  ChiMatrix chi;
  SolverReport report;
};

/// Least-squares χ over the PSD set with Tr χ = 1 (or ≤ 1 in inequality
/// mode), fitted to the 4x4 tomographic grid. Without `start`, warm-starts
/// from the projected standard inversion.
ProcessEstimate qpt_solve(const ProcessCounts& counts, const SolverSettings& settings = {},
                          const std::optional<HermitianMatrix>& start = std::nullopt);

/// ‖χ̃_eq − χ̃_ineq‖_F between the Tr = 1 and Tr ≤ 1 fits of the same data.
double trace_relaxation_check(const ProcessCounts& counts, const SolverSettings& settings = {});

}  // namespace physchan
