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

// Dense complex linear algebra for the small matrices that occur in one- and
// two-qubit tomography (dimension 2 to 16). Everything here is a pure function
// of its arguments.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace physchan {

using Complex = std::complex<double>;

/// Absolute tolerance separating floating-point noise from a genuine
/// negative eigenvalue.
inline constexpr double kPsdTolerance = 1e-9;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Row-major entries; throws if the count is wrong or any entry is not finite.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Kronecker product a ⊗ b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Outer product |u⟩⟨v|.
ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v);

/// Square complex matrix equal to its own adjoint. Construction from an
/// arbitrary square matrix keeps the Hermitian part (A + A†)/2, so the
/// stored entries satisfy A(i,j) == conj(A(j,i)) exactly.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix zero(std::size_t dim);
  static HermitianMatrix identity(std::size_t dim);
  static HermitianMatrix diagonal(std::span<const double> values);
  static HermitianMatrix diagonal(std::initializer_list<double> values);
  /// |v⟩⟨v|
  static HermitianMatrix projector(std::span<const Complex> v);

  std::size_t dim() const noexcept { return m_.rows(); }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  operator const ComplexMatrix&() const noexcept { return m_; }

  double trace() const;
  double frobenius_norm() const { return m_.frobenius_norm(); }
  /// ⟨v|A|v⟩, real for Hermitian A.
  double expectation(std::span<const Complex> v) const;

  HermitianMatrix& operator+=(const HermitianMatrix& other);
  HermitianMatrix& operator-=(const HermitianMatrix& other);
  HermitianMatrix& operator*=(double scale);

  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }

  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

 private:
  ComplexMatrix m_;
};

/// Real Frobenius inner product Re Tr(A†B).
double inner(const HermitianMatrix& a, const HermitianMatrix& b);

/// ‖a − b‖_F
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// U A U† for a square U.
HermitianMatrix conjugate(const ComplexMatrix& u, const HermitianMatrix& a);

struct EigenDecomposition {
  /// Descending.
  std::vector<double> eigenvalues;
  /// Unitary; column k is the eigenvector for eigenvalues[k].
  ComplexMatrix eigenvectors;

  /// V diag(values) V†
  HermitianMatrix reassemble(std::span<const double> values) const;
  HermitianMatrix reconstruct() const { return reassemble(eigenvalues); }
};

/// Cyclic complex Jacobi eigensolver. Throws ConvergenceError if the
/// off-diagonal norm has not vanished after the sweep cap.
EigenDecomposition herm_eig(const HermitianMatrix& a);

/// Descending eigenvalues only.
std::vector<double> eigenvalues(const HermitianMatrix& a);

/// Principal square root of a PSD matrix. Eigenvalues in [−tolerance, 0)
/// are clamped to zero; anything below −tolerance raises NotPsdError.
HermitianMatrix sqrt_psd(const HermitianMatrix& a, double tolerance = kPsdTolerance);

struct SingularValueDecomposition {
  ComplexMatrix u;             // rows × k, orthonormal columns where sigma > 0
  std::vector<double> sigma;   // descending, k = min(rows, cols)
  ComplexMatrix v;             // cols × k
};

/// One-sided (Hestenes) Jacobi SVD. Singular values carry absolute error of
/// order machine epsilon times the largest one, so tiny values are resolved
/// without the squaring loss of an eigendecomposition of A†A.
SingularValueDecomposition svd(const ComplexMatrix& a);

/// Sum of singular values.
double nuclear_norm(const ComplexMatrix& a);

struct LeastSquaresSolution {
  std::vector<Complex> x;
  std::size_t rank = 0;
  double residual_norm = 0.0;
};

/// Minimum-norm least-squares solution of A x = b through the pseudo-inverse.
/// Singular values below relative_cutoff × sigma_max are treated as zero.
LeastSquaresSolution least_squares(const ComplexMatrix& a, std::span<const Complex> b,
                                   double relative_cutoff = 1e-12);

/// Euclidean projection onto {x : x ≥ 0, Σx = 1} by sort-and-threshold.
std::vector<double> project_simplex(std::span<const double> v);

/// Euclidean projection onto {x : x ≥ 0, Σx ≤ 1}.
std::vector<double> project_capped_simplex(std::span<const double> v);

enum class TraceMode { equality, inequality };

/// Frobenius-nearest PSD matrix with unit trace (equality) or trace at most
/// one (inequality): eigendecompose, project the spectrum, reassemble.
HermitianMatrix project_density(const HermitianMatrix& a,
                                TraceMode mode = TraceMode::equality);

}  // namespace physchan
