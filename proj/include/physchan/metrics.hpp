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
#include <random>
#include <span>
#include <vector>

#include "physchan/counts.hpp"
#include "physchan/quantum.hpp"
#include "physchan/solver.hpp"

namespace physchan {

/// Tr √(√A B √A), evaluated as the nuclear norm of √A √B. Both arguments
/// must be PSD within kPsdTolerance. Clamped to [0, 1].
double process_fidelity(const HermitianMatrix& a, const HermitianMatrix& b);
inline double process_fidelity(const ChiMatrix& a, const ChiMatrix& b) {
  return process_fidelity(a.matrix(), b.matrix());
}

/// Σ_ij |pred_ij − exp_ij|² / d² for d×d matrices.
double state_deviation(const HermitianMatrix& predicted, const HermitianMatrix& experimental);

/// Mean of state_deviation(apply_chi(χ, |φ_i⟩⟨φ_i|), ρ^e_i) over the inputs.
double average_state_deviation(const ChiMatrix& chi, std::span<const Polarization> inputs,
                               std::span<const HermitianMatrix> experimental);

/// Experimentally determined output states: qst_solve on each input's
/// {H, V, D, R} records.
std::vector<HermitianMatrix> experimental_states(const ProcessCounts& counts,
                                                 std::span<const Polarization> inputs,
                                                 const SolverSettings& settings = {});

struct ResidualSet {
  std::vector<Polarization> inputs;
  std::vector<Polarization> projectors;
  /// Row-major over (input, projector): predicted probability − n/N.
  std::vector<double> residuals;
  /// Gaussian maximum-likelihood fit: sample mean and the 1/n standard deviation.
  double mean = 0.0;
  double sigma = 0.0;
  double skewness = 0.0;

  double at(std::size_t i, std::size_t j) const { return residuals[i * projectors.size() + j]; }
};

/// Residuals over the full {H, V, D, A, R, L}² grid.
ResidualSet residual_set(const ChiMatrix& chi, const ProcessCounts& counts);

struct HistogramBin {
  double lower;
  double upper;
  std::size_t count;
};

std::vector<HistogramBin> histogram(std::span<const double> values, std::size_t bins);

struct MonteCarloResult {
  int trials = 0;
  std::uint64_t seed = 0;
  /// Fidelity of every successful trial, in trial order.
  std::vector<double> fidelities;
  /// Indices of trials whose solve threw or did not converge.
  std::vector<int> failed_trials;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n − 1)

  friend bool operator==(const MonteCarloResult&, const MonteCarloResult&) = default;
};

/// Resamples every count from Poisson(observed), refits with qpt_solve and
/// scores process_fidelity against `target`, `trials` times. Trial k draws
/// from a stream seeded by (seed, k), so the result does not depend on
/// `workers`. Throws Error(solver_failure) when fewer than 80% of trials
/// succeed.
MonteCarloResult monte_carlo_fidelity(const ProcessCounts& counts, const ChiMatrix& target,
                                      int trials, std::uint64_t seed,
                                      const SolverSettings& settings = {}, unsigned workers = 0);

/// Poisson resample of every record, drawing from `engine` in record order.
ProcessCounts poisson_resample(const ProcessCounts& counts, std::mt19937_64& engine);

}  // namespace physchan
