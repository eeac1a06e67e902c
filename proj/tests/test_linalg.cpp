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


#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "physchan/error.hpp"
#include "physchan/linalg.hpp"
#include "test_support.hpp"

using namespace physchan;
using physchan::testing::Rng;

namespace {

double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  }
  return m;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("matrix construction validates entries") {
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), Error);
  CHECK_THROWS_AS(ComplexMatrix(1, 2, {1.0, Complex(std::nan(""), 0.0)}), Error);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {std::numeric_limits<double>::infinity()}), Error);
  const ComplexMatrix ok(1, 2, {1.0, Complex(0.0, 2.0)});
  CHECK(ok(0, 1) == Complex(0.0, 2.0));
}

TEST_CASE("Hermitian construction symmetrizes") {
  const HermitianMatrix h(ComplexMatrix{{Complex(1.0, 0.3), Complex(2.0, 1.0)},
                                        {Complex(4.0, 3.0), 5.0}});
  CHECK(h(0, 0).imag() == 0.0);
  CHECK(h(0, 1) == std::conj(h(1, 0)));
  CHECK(h.trace() == doctest::Approx(6.0));
}

TEST_CASE("herm_eig on diagonal and Pauli inputs") {
  const auto e = herm_eig(HermitianMatrix::diagonal({1.0, 0.0, 0.0, 0.0}));
  CHECK(e.eigenvalues == std::vector<double>{1.0, 0.0, 0.0, 0.0});
  // Eigenvectors form a permutation of the standard basis (up to phase).
  for (std::size_t c = 0; c < 4; ++c) {
    int ones = 0;
    for (std::size_t r = 0; r < 4; ++r) {
      const double a = std::abs(e.eigenvectors(r, c));
      CHECK((a < 1e-14 || std::abs(a - 1.0) < 1e-14));
      ones += a > 0.5;
    }
    CHECK(ones == 1);
  }
  const auto sx = eigenvalues(HermitianMatrix(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}));
  CHECK(sx[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sx[1] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices") {
  Rng rng(11);
  for (std::size_t d : {2u, 3u, 4u, 8u, 16u}) {
    for (int t = 0; t < 20; ++t) {
      const auto a = physchan::testing::random_hermitian(d, rng);
      const auto e = herm_eig(a);
      const double err = frobenius_distance(e.reconstruct().matrix(), a.matrix());
      CHECK(err <= 1e-10 * std::max(1.0, a.frobenius_norm()));
      const auto vv = e.eigenvectors.adjoint() * e.eigenvectors;
      CHECK(max_entry_diff(vv, ComplexMatrix::identity(d)) <= 1e-10);
      CHECK(std::is_sorted(e.eigenvalues.rbegin(), e.eigenvalues.rend()));
      const double sum = std::accumulate(e.eigenvalues.begin(), e.eigenvalues.end(), 0.0);
      CHECK(std::abs(sum - a.trace()) <= 1e-10);
    }
  }
}

TEST_CASE("sqrt_psd") {
  CHECK(frobenius_distance(sqrt_psd(HermitianMatrix::identity(3)).matrix(),
                           ComplexMatrix::identity(3)) < 1e-14);
  const auto r = sqrt_psd(HermitianMatrix::diagonal({4.0, 1.0}));
  CHECK(r(0, 0).real() == doctest::Approx(2.0));
  CHECK(r(1, 1).real() == doctest::Approx(1.0));

  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    const auto c = physchan::testing::random_matrix(4, 4, rng);
    const HermitianMatrix b(c.adjoint() * c);
    const auto root = sqrt_psd(b);
    CHECK(frobenius_distance(root.matrix() * root.matrix(), b.matrix()) <= 1e-8);

    const auto u = physchan::testing::haar_unitary(4, rng);
    const auto lhs = sqrt_psd(conjugate(u, b));
    const auto rhs = conjugate(u, root);
    CHECK(frobenius_distance(lhs.matrix(), rhs.matrix()) <= 1e-8);
  }
  CHECK_THROWS_AS(sqrt_psd(HermitianMatrix::diagonal({1.0, -0.1})), NotPsdError);
  // Noise below the tolerance is clamped silently.
  CHECK_NOTHROW(sqrt_psd(HermitianMatrix::diagonal({1.0, -1e-12})));
}

TEST_CASE("svd and nuclear norm") {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    const auto a = physchan::testing::random_matrix(6, 4, rng);
    const auto s = svd(a);
    ComplexMatrix sigma(s.sigma.size(), s.sigma.size());
    for (std::size_t k = 0; k < s.sigma.size(); ++k) sigma(k, k) = s.sigma[k];
    CHECK(frobenius_distance(s.u * sigma * s.v.adjoint(), a) <= 1e-10);
    CHECK(std::is_sorted(s.sigma.rbegin(), s.sigma.rend()));
  }
  CHECK(nuclear_norm(ComplexMatrix{{3.0, 0.0}, {0.0, -2.0}}) == doctest::Approx(5.0));
}

TEST_CASE("least squares handles rank deficiency") {
  const ComplexMatrix a{{1.0, 1.0}, {1.0, 1.0}, {0.0, 0.0}};
  const std::vector<Complex> b{2.0, 2.0, 0.0};
  const auto sol = least_squares(a, b);
  CHECK(sol.rank == 1);
  // Minimum-norm solution.
  CHECK(std::abs(sol.x[0] - 1.0) < 1e-12);
  CHECK(std::abs(sol.x[1] - 1.0) < 1e-12);
  CHECK(sol.residual_norm < 1e-12);
}

TEST_CASE("project_simplex examples") {
  auto approx_eq = [](std::vector<double> got, std::vector<double> want, double tol) {
    REQUIRE(got.size() == want.size());
    for (std::size_t k = 0; k < got.size(); ++k) CHECK(std::abs(got[k] - want[k]) <= tol);
  };
  approx_eq(project_simplex(std::vector{0.5, 0.5}), {0.5, 0.5}, 1e-15);
  approx_eq(project_simplex(std::vector{2.0, 0.0}), {1.0, 0.0}, 1e-15);
  approx_eq(project_simplex(std::vector{0.9263, 0.1941, -0.0203, -0.1001}),
            {0.8661, 0.1339, 0.0, 0.0}, 1e-12);
  CHECK_THROWS_AS(project_simplex(std::vector<double>{}), Error);
  CHECK_THROWS_AS(project_simplex(std::vector{std::nan(""), 1.0}), Error);

  approx_eq(project_capped_simplex(std::vector{0.2, -0.5, 0.3}), {0.2, 0.0, 0.3}, 1e-15);
  approx_eq(project_capped_simplex(std::vector{2.0, 0.0}), {1.0, 0.0}, 1e-15);
}

TEST_CASE("project_density fixed points and examples") {
  Rng rng(14);
  for (int t = 0; t < 20; ++t) {
    const auto rho = physchan::testing::random_feasible(4, rng);
    CHECK(frobenius_distance(project_density(rho).matrix(), rho.matrix()) <= 1e-10);
    const auto sub = physchan::testing::random_feasible(4, rng, TraceMode::inequality);
    CHECK(frobenius_distance(project_density(sub, TraceMode::inequality).matrix(),
                             sub.matrix()) <= 1e-10);
  }
  const auto p = project_density(HermitianMatrix::diagonal({0.9263, 0.1941, -0.0203, -0.1001}));
  CHECK(frobenius_distance(p.matrix(),
                           HermitianMatrix::diagonal({0.8661, 0.1339, 0.0, 0.0}).matrix()) <= 1e-12);
  const auto z = project_density(HermitianMatrix::zero(4));
  CHECK(frobenius_distance(z.matrix(), HermitianMatrix::identity(4).matrix() * 0.25) <= 1e-15);
  CHECK(frobenius_distance(project_density(HermitianMatrix::zero(4), TraceMode::inequality).matrix(),
                           HermitianMatrix::zero(4).matrix()) <= 1e-15);
}

TEST_CASE("project_density properties") {
  Rng rng(15);
  for (auto mode : {TraceMode::equality, TraceMode::inequality}) {
    for (int t = 0; t < 100; ++t) {
      const auto a = physchan::testing::random_hermitian(4, rng, 0.5);
      const auto p = project_density(a, mode);
      CHECK(frobenius_distance(project_density(p, mode).matrix(), p.matrix()) <= 1e-10);
      const auto ev = eigenvalues(p);
      CHECK(ev.back() >= -1e-12);
      if (mode == TraceMode::equality) {
        CHECK(std::abs(p.trace() - 1.0) <= 1e-12);
      } else {
        CHECK(p.trace() <= 1.0 + 1e-12);
      }
      const double best = frobenius_distance(a.matrix(), p.matrix());
      bool optimal = true;
      for (int k = 0; k < 1000; ++k) {
        const auto x = physchan::testing::random_feasible(4, rng, mode);
        if (frobenius_distance(a.matrix(), x.matrix()) < best - 1e-12) optimal = false;
      }
      CHECK(optimal);
    }
  }
}

}  // TEST_SUITE
