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

#include "physchan/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "physchan/error.hpp"

namespace physchan {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
constexpr Complex kI{0.0, 1.0};

std::array<ComplexMatrix, 4> single_qubit_paulis() {
  return {ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}}, ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}},
          ComplexMatrix{{0.0, -kI}, {kI, 0.0}}, ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}};
}

int qubits_for_chi_dim(std::size_t dim) {
  int n = 0;
  std::size_t d = 1;
  while (d < dim) {
    d *= 4;
    ++n;
  }
  if (d != dim || n == 0) {
    std::ostringstream msg;
    msg << "chi matrix dimension " << dim << " is not a power of 4";
    throw Error(ErrorCode::dimension_mismatch, msg.str());
  }
  return n;
}

void check_psd(const HermitianMatrix& m, const char* what) {
  const double smallest = eigenvalues(m).back();
  if (smallest < -kPsdTolerance) {
    std::ostringstream msg;
    msg << what << ": eigenvalue " << smallest << " below tolerance";
    throw NotPsdError(msg.str(), smallest);
  }
}

double check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "channel parameter must lie in [0, 1]");
  }
  return p;
}

}  // namespace

std::string_view to_string(Polarization p) {
  switch (p) {
    case Polarization::H: return "H";
    case Polarization::V: return "V";
    case Polarization::D: return "D";
    case Polarization::A: return "A";
    case Polarization::R: return "R";
    case Polarization::L: return "L";
  }
  return "?";
}

std::optional<Polarization> parse_polarization(std::string_view s) {
  for (auto p : kAllPolarizations) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

Ket ket(Polarization p) {
  switch (p) {
    case Polarization::H: return {1.0, 0.0};
    case Polarization::V: return {0.0, 1.0};
    case Polarization::D: return {kInvSqrt2, kInvSqrt2};
    case Polarization::A: return {kInvSqrt2, -kInvSqrt2};
    case Polarization::R: return {kInvSqrt2, kI * kInvSqrt2};
    case Polarization::L: return {kInvSqrt2, -kI * kInvSqrt2};
  }
  return {0.0, 0.0};
}

HermitianMatrix pure_state(Polarization p) {
  const auto k = ket(p);
  return HermitianMatrix::projector(k);
}

OperatorBasis pauli_basis(int qubits) {
  if (qubits < 1) throw Error(ErrorCode::invalid_argument, "pauli_basis: need at least one qubit");
  const auto paulis = single_qubit_paulis();
  OperatorBasis basis(paulis.begin(), paulis.end());
  for (int q = 1; q < qubits; ++q) {
    OperatorBasis next;
    next.reserve(basis.size() * 4);
    for (const auto& b : basis) {
      for (const auto& p : paulis) next.push_back(kron(b, p));
    }
    basis = std::move(next);
  }
  return basis;
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(HermitianMatrix m) : m_(std::move(m)) {
  if (m_.dim() == 0) throw Error(ErrorCode::invalid_argument, "density matrix: empty");
  const double tr = m_.trace();
  if (std::abs(tr - 1.0) > kPsdTolerance) {
    std::ostringstream msg;
    msg << "density matrix: trace " << tr << " differs from 1";
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
  check_psd(m_, "density matrix");
}

ChiMatrix::ChiMatrix(HermitianMatrix m, ChiKind kind)
    : m_(std::move(m)), qubits_(qubits_for_chi_dim(m_.dim())), kind_(kind) {
  if (kind_ == ChiKind::unconstrained) return;
  const double tr = m_.trace();
  const bool trace_ok = kind_ == ChiKind::physical ? std::abs(tr - 1.0) <= kPsdTolerance
                                                   : tr <= 1.0 + kPsdTolerance;
  if (!trace_ok) {
    std::ostringstream msg;
    msg << "chi matrix: trace " << tr << " violates the "
        << (kind_ == ChiKind::physical ? "Tr = 1" : "Tr <= 1") << " constraint";
    throw Error(ErrorCode::invalid_argument, msg.str());
  }
  check_psd(m_, "chi matrix");
}

ChiMatrix chi_ideal(int qubits) {
  if (qubits < 1) throw Error(ErrorCode::invalid_argument, "chi_ideal: need at least one qubit");
  std::size_t dim = 1;
  for (int q = 0; q < qubits; ++q) dim *= 4;
  ComplexMatrix m(dim, dim);
  m(0, 0) = 1.0;
  return ChiMatrix(HermitianMatrix(m));
}

ChiMatrix chi_from_kraus(std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) throw Error(ErrorCode::invalid_argument, "chi_from_kraus: no operators");
  const std::size_t d = kraus.front().rows();
  int qubits = 0;
  for (std::size_t s = 1; s < d; s *= 2) ++qubits;
  if ((std::size_t{1} << qubits) != d || qubits == 0) {
    throw Error(ErrorCode::dimension_mismatch, "chi_from_kraus: operator size is not 2^n");
  }
  const auto basis = pauli_basis(qubits);
  const std::size_t d2 = basis.size();
  ComplexMatrix chi(d2, d2);
  std::vector<Complex> e(d2);
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) {
      throw Error(ErrorCode::dimension_mismatch, "chi_from_kraus: mixed operator sizes");
    }
    for (std::size_t m = 0; m < d2; ++m) {
      e[m] = (basis[m].adjoint() * k).trace() / static_cast<double>(d);
    }
    chi += outer(e, e);
  }
  return ChiMatrix(HermitianMatrix(chi));
}

namespace channels {

ChiMatrix identity() { return chi_ideal(1); }

ChiMatrix bit_flip(double p) {
  check_probability(p);
  return ChiMatrix(HermitianMatrix::diagonal({1.0 - p, p, 0.0, 0.0}));
}

ChiMatrix phase_flip(double p) {
  check_probability(p);
  return ChiMatrix(HermitianMatrix::diagonal({1.0 - p, 0.0, 0.0, p}));
}

ChiMatrix depolarizing(double p) {
  check_probability(p);
  const double q = p / 4.0;
  return ChiMatrix(HermitianMatrix::diagonal({1.0 - 3.0 * q, q, q, q}));
}

}  // namespace channels

HermitianMatrix apply_chi(const ChiMatrix& chi, const HermitianMatrix& rho) {
  const std::size_t d = std::size_t{1} << chi.qubits();
  if (rho.dim() != d) {
    std::ostringstream msg;
    msg << "apply_chi: state dimension " << rho.dim() << " does not match a " << chi.qubits()
        << "-qubit chi matrix";
    throw Error(ErrorCode::dimension_mismatch, msg.str());
  }
  const auto basis = pauli_basis(chi.qubits());
  const auto& x = chi.matrix();
  ComplexMatrix out(d, d);
  for (std::size_t m = 0; m < basis.size(); ++m) {
    const ComplexMatrix left = basis[m] * rho.matrix();
    for (std::size_t n = 0; n < basis.size(); ++n) {
      const Complex c = x(m, n);
      if (c == Complex{}) continue;
      out += c * (left * basis[n].adjoint());
    }
  }
  return HermitianMatrix(out);
}

double predicted_prob(const ChiMatrix& chi, Polarization input, Polarization projector) {
  const auto out = apply_chi(chi, pure_state(input));
  return std::clamp(out.expectation(ket(projector)), 0.0, 1.0);
}

// ---------------------------------------------------------------------------

CoefficientTensor::CoefficientTensor(std::span<const Polarization> inputs,
                                     std::span<const Polarization> projectors,
                                     const OperatorBasis& basis)
    : inputs_(inputs.begin(), inputs.end()),
      projectors_(projectors.begin(), projectors.end()),
      basis_size_(basis.size()) {
  for (const auto& e : basis) {
    if (e.rows() != 2 || e.cols() != 2) {
      throw Error(ErrorCode::dimension_mismatch, "coefficient tensor needs a one-qubit basis");
    }
  }
  amplitudes_.reserve(inputs_.size() * projectors_.size() * basis_size_);
  for (auto in : inputs_) {
    const auto phi = ket(in);
    for (auto pr : projectors_) {
      const auto psi = ket(pr);
      for (const auto& e : basis) {
        Complex a{0.0, 0.0};
        for (std::size_t r = 0; r < 2; ++r) {
          for (std::size_t c = 0; c < 2; ++c) a += std::conj(psi[r]) * e(r, c) * phi[c];
        }
        amplitudes_.push_back(a);
      }
    }
  }
}

std::optional<std::size_t> CoefficientTensor::input_index(Polarization p) const {
  auto it = std::find(inputs_.begin(), inputs_.end(), p);
  if (it == inputs_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - inputs_.begin());
}

std::optional<std::size_t> CoefficientTensor::projector_index(Polarization p) const {
  auto it = std::find(projectors_.begin(), projectors_.end(), p);
  if (it == projectors_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - projectors_.begin());
}

std::span<const Complex> CoefficientTensor::amplitudes(std::size_t i, std::size_t j) const {
  if (i >= inputs_.size() || j >= projectors_.size()) {
    throw Error(ErrorCode::invalid_argument, "coefficient tensor index out of range");
  }
  return std::span<const Complex>(amplitudes_)
      .subspan((i * projectors_.size() + j) * basis_size_, basis_size_);
}

Complex CoefficientTensor::operator()(std::size_t i, std::size_t j, std::size_t m,
                                      std::size_t n) const {
  const auto a = amplitudes(i, j);
  return a[m] * std::conj(a[n]);
}

HermitianMatrix CoefficientTensor::slice(std::size_t i, std::size_t j) const {
  const auto a = amplitudes(i, j);
  return HermitianMatrix(outer(a, a));
}

HermitianMatrix CoefficientTensor::gradient_matrix(std::size_t i, std::size_t j) const {
  const auto a = amplitudes(i, j);
  std::vector<Complex> w(a.size());
  std::transform(a.begin(), a.end(), w.begin(), [](Complex z) { return std::conj(z); });
  return HermitianMatrix(outer(w, w));
}

double CoefficientTensor::probability(std::size_t i, std::size_t j,
                                      const HermitianMatrix& chi) const {
  const auto a = amplitudes(i, j);
  if (chi.dim() != a.size()) {
    throw Error(ErrorCode::dimension_mismatch, "coefficient tensor: chi dimension");
  }
  double p = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    Complex row{0.0, 0.0};
    for (std::size_t n = 0; n < a.size(); ++n) row += chi(m, n) * std::conj(a[n]);
    p += (a[m] * row).real();
  }
  return p;
}

}  // namespace physchan
