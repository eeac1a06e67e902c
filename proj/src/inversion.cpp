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

#include "physchan/inversion.hpp"

#include <sstream>

#include "physchan/error.hpp"

namespace physchan {

HermitianMatrix qst_linear_inversion(const StateCounts& counts) {
  const double fh = counts.at(Polarization::H).frequency();
  const double fv = counts.at(Polarization::V).frequency();
  const double fd = counts.at(Polarization::D).frequency();
  const double fr = counts.at(Polarization::R).frequency();

  const double sz = fh - fv;
  const double sx = 2.0 * fd - 1.0;
  const double sy = 2.0 * fr - 1.0;

  // ½(I + sx σx + sy σy + sz σz) in (H, V) storage order.
  ComplexMatrix rho{{0.5 * (1.0 + sz), 0.5 * Complex(sx, -sy)},
                    {0.5 * Complex(sx, sy), 0.5 * (1.0 - sz)}};
  return HermitianMatrix(rho);
}

std::string StandardInversion::warning() const {
  std::ostringstream msg;
  if (rank_deficient()) msg << "inversion system has rank " << rank << " of " << full_rank << "; ";
  if (inconsistent()) msg << "least-squares residual " << residual_norm << "; ";
  auto s = msg.str();
  if (!s.empty()) s.resize(s.size() - 2);
  return s;
}

StandardInversion qpt_standard_inversion(std::span<const ProcessOutput> outputs) {
  if (outputs.empty()) throw Error(ErrorCode::invalid_argument, "qpt_standard_inversion: no data");
  const std::size_t d = outputs.front().output.dim();
  int qubits = 0;
  for (std::size_t s = 1; s < d; s *= 2) ++qubits;
  if ((std::size_t{1} << qubits) != d || qubits == 0) {
    throw Error(ErrorCode::dimension_mismatch, "qpt_standard_inversion: output size is not 2^n");
  }
  if (qubits != 1) {
    throw Error(ErrorCode::invalid_argument, "qpt_standard_inversion: polarization inputs are one-qubit");
  }
  const auto basis = pauli_basis(qubits);
  const std::size_t d2 = basis.size();

  // Row (i, r, c): entry (r, c) of E_m ρ_i E_n†; column (m, n).
  ComplexMatrix design(outputs.size() * d * d, d2 * d2);
  std::vector<Complex> rhs(outputs.size() * d * d);
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (outputs[i].output.dim() != d) {
      throw Error(ErrorCode::dimension_mismatch, "qpt_standard_inversion: mixed output sizes");
    }
    const auto rho = pure_state(outputs[i].input);
    for (std::size_t m = 0; m < d2; ++m) {
      const ComplexMatrix left = basis[m] * rho.matrix();
      for (std::size_t n = 0; n < d2; ++n) {
        const ComplexMatrix term = left * basis[n].adjoint();
        for (std::size_t r = 0; r < d; ++r) {
          for (std::size_t c = 0; c < d; ++c) design((i * d + r) * d + c, m * d2 + n) = term(r, c);
        }
      }
    }
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) rhs[(i * d + r) * d + c] = outputs[i].output(r, c);
    }
  }

  const auto sol = least_squares(design, rhs, 1e-12);
  ComplexMatrix chi(d2, d2, sol.x);
  return StandardInversion{ChiMatrix::unconstrained(HermitianMatrix(chi)), sol.rank, d2 * d2,
                           sol.residual_norm};
}

StandardInversion qpt_standard_inversion(const ProcessCounts& counts) {
  std::vector<ProcessOutput> outputs;
  for (auto in : kTomographicStates) {
    outputs.push_back({in, qst_linear_inversion(counts.for_input(in))});
  }
  return qpt_standard_inversion(outputs);
}

EigenvalueReport eigenvalue_report(const HermitianMatrix& chi) {
  EigenvalueReport out;
  out.eigenvalues = eigenvalues(chi);
  out.physical = out.eigenvalues.back() >= -kPsdTolerance;
  return out;
}

}  // namespace physchan
