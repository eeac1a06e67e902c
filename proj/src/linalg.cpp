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

#include "physchan/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "physchan/error.hpp"

namespace physchan {

namespace {

constexpr std::size_t kMaxEigenDim = 64;
constexpr int kMaxSweeps = 100;

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << what << ": shape " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
        << b.cols();
    throw Error(ErrorCode::dimension_mismatch, msg.str());
  }
}

// 2x2 unitary U with U† [[a, g], [conj(g), b]] U diagonal. A phase on the
// second coordinate makes the off-diagonal real, then a real Jacobi rotation
// annihilates it.
struct JacobiRotation {
  Complex pp, pq, qp, qq;
};

JacobiRotation jacobi_rotation(double app, double aqq, Complex g) {
  const double r = std::abs(g);
  const Complex phase = std::conj(g) / r;
  const double theta = (aqq - app) / (2.0 * r);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  return {c, s, -s * phase, c * phase};
}

// M <- M U on columns p, q.
void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const JacobiRotation& u) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const Complex mkp = m(k, p);
    const Complex mkq = m(k, q);
    m(k, p) = mkp * u.pp + mkq * u.qp;
    m(k, q) = mkp * u.pq + mkq * u.qq;
  }
}

// M <- U† M on rows p, q.
void rotate_rows(ComplexMatrix& m, std::size_t p, std::size_t q, const JacobiRotation& u) {
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const Complex mpk = m(p, k);
    const Complex mqk = m(q, k);
    m(p, k) = std::conj(u.pp) * mpk + std::conj(u.qp) * mqk;
    m(q, k) = std::conj(u.pq) * mpk + std::conj(u.qq) * mqk;
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

std::vector<std::size_t> descending_order(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return order;
}

void require_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw Error(ErrorCode::invalid_argument, "non-finite entry");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::dimension_mismatch, "entry count does not match rows x cols");
  }
  if (!all_finite()) throw Error(ErrorCode::invalid_argument, "matrix has non-finite entries");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorCode::dimension_mismatch, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& z : data_) sum += std::norm(z);
  return std::sqrt(sum);
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::dimension_mismatch, "matrix product: inner dimensions differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v) {
  ComplexMatrix out(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = u[i] * std::conj(v[j]);
  }
  return out;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).frobenius_norm();
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) : m_(m.rows(), m.cols()) {
  if (!m.is_square()) throw Error(ErrorCode::dimension_mismatch, "Hermitian matrix must be square");
  if (!m.all_finite()) throw Error(ErrorCode::invalid_argument, "matrix has non-finite entries");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    m_(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex upper = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m_(i, j) = upper;
      m_(j, i) = std::conj(upper);
    }
  }
}

HermitianMatrix HermitianMatrix::zero(std::size_t dim) {
  return HermitianMatrix(ComplexMatrix(dim, dim));
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  return HermitianMatrix(ComplexMatrix::identity(dim));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

HermitianMatrix HermitianMatrix::projector(std::span<const Complex> v) {
  return HermitianMatrix(outer(v, v));
}

double HermitianMatrix::trace() const { return m_.trace().real(); }

double HermitianMatrix::expectation(std::span<const Complex> v) const {
  if (v.size() != dim()) throw Error(ErrorCode::dimension_mismatch, "expectation: vector size");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < dim(); ++i) {
    Complex row{0.0, 0.0};
    for (std::size_t j = 0; j < dim(); ++j) row += m_(i, j) * v[j];
    acc += std::conj(v[i]) * row;
  }
  return acc.real();
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& other) {
  m_ += other.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& other) {
  m_ -= other.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double scale) {
  m_ *= scale;
  return *this;
}

double inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_shape(a.matrix(), b.matrix(), "inner product");
  double sum = 0.0;
  const auto ea = a.matrix().entries();
  const auto eb = b.matrix().entries();
  for (std::size_t k = 0; k < ea.size(); ++k) {
    sum += ea[k].real() * eb[k].real() + ea[k].imag() * eb[k].imag();
  }
  return sum;
}

HermitianMatrix conjugate(const ComplexMatrix& u, const HermitianMatrix& a) {
  return HermitianMatrix(u * a.matrix() * u.adjoint());
}

// ---------------------------------------------------------------------------
// Eigendecomposition

HermitianMatrix EigenDecomposition::reassemble(std::span<const double> values) const {
  const std::size_t n = eigenvectors.rows();
  if (values.size() != n) throw Error(ErrorCode::dimension_mismatch, "reassemble: value count");
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (values[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = values[k] * eigenvectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eigenvectors(j, k));
    }
  }
  return HermitianMatrix(out);
}

EigenDecomposition herm_eig(const HermitianMatrix& input) {
  const std::size_t n = input.dim();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "herm_eig: empty matrix");
  if (n > kMaxEigenDim) throw Error(ErrorCode::invalid_argument, "herm_eig: dimension above 64");

  ComplexMatrix a = input.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = a.frobenius_norm();

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off == 0.0 || off <= 1e-14 * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex g = a(p, q);
        if (std::abs(g) == 0.0) continue;
        const auto rot = jacobi_rotation(a(p, p).real(), a(q, q).real(), g);
        rotate_columns(a, p, q, rot);
        rotate_rows(a, p, q, rot);
        rotate_columns(v, p, q, rot);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  if (!converged) {
    const double off = off_diagonal_norm(a);
    if (off > 1e-14 * scale) {
      std::ostringstream msg;
      msg << "herm_eig: no convergence after " << kMaxSweeps
          << " sweeps, off-diagonal norm " << off;
      throw ConvergenceError(msg.str(), off);
    }
  }

  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  const auto order = descending_order(diag);

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = diag[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> eigenvalues(const HermitianMatrix& a) { return herm_eig(a).eigenvalues; }

HermitianMatrix sqrt_psd(const HermitianMatrix& a, double tolerance) {
  const auto eig = herm_eig(a);
  const double smallest = eig.eigenvalues.back();
  if (smallest < -tolerance) {
    std::ostringstream msg;
    msg << "sqrt_psd: matrix is not PSD, eigenvalue " << smallest;
    throw NotPsdError(msg.str(), smallest);
  }
  std::vector<double> roots(eig.eigenvalues.size());
  std::transform(eig.eigenvalues.begin(), eig.eigenvalues.end(), roots.begin(),
                 [](double x) { return std::sqrt(std::max(x, 0.0)); });
  return eig.reassemble(roots);
}

// ---------------------------------------------------------------------------
// SVD and least squares

SingularValueDecomposition svd(const ComplexMatrix& a) {
  if (a.rows() < a.cols()) {
    auto t = svd(a.adjoint());
    return {std::move(t.v), std::move(t.sigma), std::move(t.u)};
  }
  const std::size_t n = a.cols();
  ComplexMatrix w = a;
  ComplexMatrix v = ComplexMatrix::identity(n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma{0.0, 0.0};
        for (std::size_t k = 0; k < w.rows(); ++k) {
          alpha += std::norm(w(k, p));
          beta += std::norm(w(k, q));
          gamma += std::conj(w(k, p)) * w(k, q);
        }
        const double mag = std::abs(gamma);
        if (mag == 0.0 || mag <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const auto rot = jacobi_rotation(alpha, beta, gamma);
        rotate_columns(w, p, q, rot);
        rotate_columns(v, p, q, rot);
      }
    }
    if (!rotated) break;
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < w.rows(); ++k) s += std::norm(w(k, j));
    norms[j] = std::sqrt(s);
  }
  const auto order = descending_order(norms);

  SingularValueDecomposition out{ComplexMatrix(w.rows(), n), std::vector<double>(n),
                                 ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = norms[j];
    for (std::size_t i = 0; i < w.rows(); ++i) {
      out.u(i, k) = norms[j] > 0.0 ? w(i, j) / norms[j] : Complex{};
    }
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, j);
  }
  return out;
}

double nuclear_norm(const ComplexMatrix& a) {
  const auto s = svd(a).sigma;
  return std::accumulate(s.begin(), s.end(), 0.0);
}

LeastSquaresSolution least_squares(const ComplexMatrix& a, std::span<const Complex> b,
                                   double relative_cutoff) {
  if (b.size() != a.rows()) throw Error(ErrorCode::dimension_mismatch, "least_squares: rhs size");
  const auto dec = svd(a);
  const std::size_t k = dec.sigma.size();
  const double cutoff = dec.sigma.empty() ? 0.0 : relative_cutoff * dec.sigma.front();

  LeastSquaresSolution out;
  out.x.assign(a.cols(), Complex{});
  for (std::size_t s = 0; s < k; ++s) {
    if (dec.sigma[s] <= cutoff || dec.sigma[s] == 0.0) continue;
    ++out.rank;
    Complex coef{0.0, 0.0};
    for (std::size_t i = 0; i < a.rows(); ++i) coef += std::conj(dec.u(i, s)) * b[i];
    coef /= dec.sigma[s];
    for (std::size_t i = 0; i < a.cols(); ++i) out.x[i] += dec.v(i, s) * coef;
  }
  double res = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex row{0.0, 0.0};
    for (std::size_t j = 0; j < a.cols(); ++j) row += a(i, j) * out.x[j];
    res += std::norm(row - b[i]);
  }
  out.residual_norm = std::sqrt(res);
  return out;
}

// ---------------------------------------------------------------------------
// Projections

std::vector<double> project_simplex(std::span<const double> v) {
  if (v.empty()) throw Error(ErrorCode::invalid_argument, "project_simplex: empty vector");
  require_finite(v);

  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double threshold = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) threshold = candidate;
  }
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(),
                 [threshold](double x) { return std::max(x - threshold, 0.0); });
  return out;
}

std::vector<double> project_capped_simplex(std::span<const double> v) {
  if (v.empty()) throw Error(ErrorCode::invalid_argument, "project_capped_simplex: empty vector");
  require_finite(v);
  std::vector<double> clipped(v.size());
  std::transform(v.begin(), v.end(), clipped.begin(), [](double x) { return std::max(x, 0.0); });
  if (std::accumulate(clipped.begin(), clipped.end(), 0.0) <= 1.0) return clipped;
  return project_simplex(v);
}

HermitianMatrix project_density(const HermitianMatrix& a, TraceMode mode) {
  const auto eig = herm_eig(a);
  const auto values = mode == TraceMode::equality ? project_simplex(eig.eigenvalues)
                                                  : project_capped_simplex(eig.eigenvalues);
  return eig.reassemble(values);
}

}  // namespace physchan
