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

// Polarization qubits, the Pauli operator basis, and the χ-matrix
// representation of a channel, E(ρ) = Σ_mn χ_mn E_m ρ E_n†.
//
// Storage convention: basis index 0 is |1⟩ = H, index 1 is |0⟩ = V. The Pauli
// operators are the textbook matrices written in that storage order, so
// σz = diag(1, −1) has H as its +1 eigenstate.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "physchan/linalg.hpp"

namespace physchan {

enum class Polarization { H, V, D, A, R, L };

inline constexpr std::array<Polarization, 4> kTomographicStates = {
    Polarization::H, Polarization::V, Polarization::D, Polarization::R};
inline constexpr std::array<Polarization, 6> kAllPolarizations = {
    Polarization::H, Polarization::V, Polarization::D,
    Polarization::A, Polarization::R, Polarization::L};

std::string_view to_string(Polarization p);
std::optional<Polarization> parse_polarization(std::string_view s);

using Ket = std::array<Complex, 2>;

/// H=|1⟩, V=|0⟩, D=(|1⟩+|0⟩)/√2, A=(|1⟩−|0⟩)/√2, R=(|1⟩+i|0⟩)/√2, L=(|1⟩−i|0⟩)/√2
Ket ket(Polarization p);

/// |p⟩⟨p|
HermitianMatrix pure_state(Polarization p);

/// Fixed operator set E_0..E_{d²−1}; E_0 is the identity.
using OperatorBasis = std::vector<ComplexMatrix>;

/// 4^n tensor products of {I, σx, σy, σz}, first qubit most significant.
OperatorBasis pauli_basis(int qubits);

/// Unit-trace PSD matrix (tolerance kPsdTolerance on both).
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianMatrix m);

  std::size_t dim() const noexcept { return m_.dim(); }
  const HermitianMatrix& matrix() const noexcept { return m_; }
  operator const HermitianMatrix&() const noexcept { return m_; }

 private:
  HermitianMatrix m_;
};

enum class ChiKind {
  physical,               // PSD, Tr = 1
  trace_non_increasing,   // PSD, Tr ≤ 1
  unconstrained,          // raw inversion output, no physical invariants
};

/// Process matrix in the Pauli basis of `qubits` qubits (dimension 4^qubits).
class ChiMatrix {
 public:
  /// Validates PSD and Tr = 1 (or Tr ≤ 1 for trace_non_increasing).
  ChiMatrix(HermitianMatrix m, ChiKind kind = ChiKind::physical);

  static ChiMatrix unconstrained(HermitianMatrix m) {
    return ChiMatrix(std::move(m), ChiKind::unconstrained);
  }

  int qubits() const noexcept { return qubits_; }
  std::size_t dim() const noexcept { return m_.dim(); }
  ChiKind kind() const noexcept { return kind_; }
  bool is_physical() const noexcept { return kind_ != ChiKind::unconstrained; }
  const HermitianMatrix& matrix() const noexcept { return m_; }
  operator const HermitianMatrix&() const noexcept { return m_; }

 private:
  HermitianMatrix m_;
  int qubits_ = 1;
  ChiKind kind_;
};

/// χ with the single nonzero entry χ_00 = 1.
ChiMatrix chi_ideal(int qubits = 1);

/// χ_mn = Σ_a e_am conj(e_an) where K_a = Σ_m e_am E_m in the Pauli basis.
/// The result is flagged physical; Kraus sets with Σ K†K = I give Tr χ = 1.
ChiMatrix chi_from_kraus(std::span<const ComplexMatrix> kraus);

namespace channels {
ChiMatrix identity();
/// ρ → (1−p)ρ + p σx ρ σx
ChiMatrix bit_flip(double p);
/// ρ → (1−p)ρ + p σz ρ σz
ChiMatrix phase_flip(double p);
/// ρ → (1−p)ρ + p I/2
ChiMatrix depolarizing(double p);
}  // namespace channels

/// Σ_mn χ_mn E_m ρ E_n†. The output is a density matrix whenever χ describes a
/// trace-preserving channel; for other inputs it is returned as computed.
HermitianMatrix apply_chi(const ChiMatrix& chi, const HermitianMatrix& rho);

/// ⟨ψ| E(|φ⟩⟨φ|) |ψ⟩ clamped to [0, 1].
double predicted_prob(const ChiMatrix& chi, Polarization input, Polarization projector);

/// A[i][j][m][n] = ⟨ψ_j|E_m|φ_i⟩⟨φ_i|E_n†|ψ_j⟩ for one-qubit inputs φ_i and
/// projectors ψ_j. Each (i, j) slice is the rank-one Hermitian matrix a a†
/// with a_m = ⟨ψ_j|E_m|φ_i⟩, so only the vector a is stored.
class CoefficientTensor {
 public:
  CoefficientTensor(std::span<const Polarization> inputs,
                    std::span<const Polarization> projectors,
                    const OperatorBasis& basis = pauli_basis(1));

  std::size_t input_count() const noexcept { return inputs_.size(); }
  std::size_t projector_count() const noexcept { return projectors_.size(); }
  std::size_t basis_size() const noexcept { return basis_size_; }
  std::span<const Polarization> inputs() const noexcept { return inputs_; }
  std::span<const Polarization> projectors() const noexcept { return projectors_; }

  std::optional<std::size_t> input_index(Polarization p) const;
  std::optional<std::size_t> projector_index(Polarization p) const;

  Complex operator()(std::size_t i, std::size_t j, std::size_t m, std::size_t n) const;
  HermitianMatrix slice(std::size_t i, std::size_t j) const;

  /// G with Σ_mn A_mn χ_mn = ⟨G, χ⟩ under the real Frobenius inner product;
  /// this is the gradient of the predicted probability with respect to χ.
  HermitianMatrix gradient_matrix(std::size_t i, std::size_t j) const;

  /// Σ_mn A[i][j][m][n] χ_mn (real part, unclamped).
  double probability(std::size_t i, std::size_t j, const HermitianMatrix& chi) const;

 private:
  std::span<const Complex> amplitudes(std::size_t i, std::size_t j) const;

  std::vector<Polarization> inputs_;
  std::vector<Polarization> projectors_;
  std::size_t basis_size_ = 0;
  std::vector<Complex> amplitudes_;  // [i][j][m]
};

}  // namespace physchan
