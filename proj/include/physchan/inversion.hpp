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

// Linear-inversion baselines. Both are exact on noiseless data and neither
// enforces positivity, so shot noise routinely yields unphysical matrices.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "physchan/counts.hpp"
#include "physchan/quantum.hpp"

namespace physchan {

/// Stokes reconstruction ρ = ½(I + s_x σx + s_y σy + s_z σz) with
/// s_z = f_H − f_V, s_x = 2 f_D − 1, s_y = 2 f_R − 1 and f = n/N.
/// Trace is exactly one; positivity is not guaranteed.
HermitianMatrix qst_linear_inversion(const StateCounts& counts);

struct ProcessOutput {
  Polarization input;
  HermitianMatrix output;
};

struct StandardInversion {
  ChiMatrix chi;
  /// Numerical rank of the 16x16 (for one qubit) linear map χ → {E(ρ_i)}.
  std::size_t rank = 0;
  std::size_t full_rank = 0;
  /// ‖Σ χ_mn E_m ρ_i E_n† − ρ'_i‖ stacked over all inputs.
  double residual_norm = 0.0;

  bool rank_deficient() const noexcept { return rank < full_rank; }
  bool inconsistent() const noexcept { return residual_norm > 1e-9; }
  /// Empty when the system was square, full rank and consistent.
  std::string warning() const;
};

/// Solves Σ_mn χ_mn E_m ρ_i E_n† = ρ'_i for all supplied inputs through the
/// pseudo-inverse of the linear map χ → {E(ρ_i)} (singular value cutoff 1e-12). The result is
/// flagged unconstrained; it may have negative eigenvalues.
StandardInversion qpt_standard_inversion(std::span<const ProcessOutput> outputs);

/// Linear-inversion QST on each input's {H, V, D, R} records, then the above.
StandardInversion qpt_standard_inversion(const ProcessCounts& counts);

struct EigenvalueReport {
  std::vector<double> eigenvalues;  // descending
  bool physical = false;            // all eigenvalues ≥ −1e-9
};

EigenvalueReport eigenvalue_report(const HermitianMatrix& chi);

}  // namespace physchan
