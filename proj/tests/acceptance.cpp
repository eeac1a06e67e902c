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


// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "physchan/inversion.hpp"
#include "physchan/metrics.hpp"
#include "physchan/solver.hpp"
#include "test_support.hpp"

using namespace physchan;
using physchan::testing::Rng;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %-38s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), seconds_since(t0));
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double min_eig(const HermitianMatrix& m) { return eigenvalues(m).back(); }

// --- independent projection oracle ------------------------------------------
//
// Eigen's eigensolver plus exhaustive enumeration of eigenvalue supports: on a
// support S the equality-constrained minimizer is x_i = λ_i − μ with a shared
// shift μ; among supports giving x ≥ 0 the closest point wins.

std::vector<double> brute_force_simplex(const std::vector<double>& v) {
  const std::size_t d = v.size();
  std::vector<double> best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    double sum = 0.0;
    int size = 0;
    for (std::size_t k = 0; k < d; ++k) {
      if (mask & (1u << k)) {
        sum += v[k];
        ++size;
      }
    }
    const double shift = (sum - 1.0) / size;
    std::vector<double> x(d, 0.0);
    bool feasible = true;
    for (std::size_t k = 0; k < d; ++k) {
      if (mask & (1u << k)) {
        x[k] = v[k] - shift;
        if (x[k] < 0.0) feasible = false;
      }
    }
    if (!feasible) continue;
    double dist = 0.0;
    for (std::size_t k = 0; k < d; ++k) dist += (x[k] - v[k]) * (x[k] - v[k]);
    if (dist < best_dist) {
      best_dist = dist;
      best = x;
    }
  }
  return best;
}

Eigen::MatrixXcd to_eigen(const HermitianMatrix& a) {
  Eigen::MatrixXcd m(a.dim(), a.dim());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) m(r, c) = a(r, c);
  }
  return m;
}

Eigen::MatrixXcd oracle_projection(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(a));
  const auto& ev = es.eigenvalues();
  const std::vector<double> lambda(ev.data(), ev.data() + ev.size());
  const auto x = brute_force_simplex(lambda);
  Eigen::VectorXd xd = Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
  return es.eigenvectors() * xd.asDiagonal() * es.eigenvectors().adjoint();
}

// --- criteria ----------------------------------------------------------------

Outcome noiseless_round_trip() {
  Rng rng(1001);
  const auto t0 = Clock::now();
  double worst_inversion = 0.0, worst_fidelity = 1.0;
  for (int t = 0; t < 100; ++t) {
    const auto chi = physchan::testing::random_channel(rng);
    const auto counts = physchan::testing::exact_counts(chi);
    const auto inv = qpt_standard_inversion(counts);
    worst_inversion = std::max(
        worst_inversion, frobenius_distance(inv.chi.matrix().matrix(), chi.matrix().matrix()));
    worst_fidelity = std::min(worst_fidelity, process_fidelity(qpt_solve(counts).chi, chi));
  }
  const double elapsed = seconds_since(t0);
  return {worst_inversion <= 1e-9 && worst_fidelity >= 0.9999 && elapsed < 60.0,
          fmt("max inversion error %.2e, min fidelity %.8f", worst_inversion, worst_fidelity)};
}

Outcome physicality_guarantee() {
  Rng rng(1002);
  const int trials = 1000;
  double worst_eig = 1.0, worst_trace = 0.0;
  int unphysical = 0;
  for (int t = 0; t < trials; ++t) {
    const auto chi = physchan::testing::near_identity_channel(rng, 0.1, 0.02);
    const auto counts = physchan::testing::poisson_counts(chi, 200, 20000 + t);
    const auto est = qpt_solve(counts);
    worst_eig = std::min(worst_eig, min_eig(est.chi.matrix()));
    worst_trace = std::max(worst_trace, std::abs(est.chi.matrix().trace() - 1.0));
    if (min_eig(qpt_standard_inversion(counts).chi.matrix()) < 0.0) ++unphysical;
  }
  const double fraction = static_cast<double>(unphysical) / trials;
  return {worst_eig >= -1e-9 && worst_trace <= 1e-9 && fraction > 0.30,
          fmt("min eigenvalue %.2e, max |Tr-1| %.1e, unphysical inversions %.1f%%", worst_eig,
              worst_trace, 100.0 * fraction)};
}

Outcome projection_oracle() {
  Rng rng(1003);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto a = physchan::testing::random_hermitian(4, rng, t % 2 ? 0.3 : 1.0);
    const auto mine = project_density(a);
    const Eigen::MatrixXcd diff = to_eigen(mine) - oracle_projection(a);
    worst = std::max(worst, diff.norm());
  }
  const auto paper_case = HermitianMatrix::diagonal({0.9263, 0.1941, -0.0203, -0.1001});
  const auto want = HermitianMatrix::diagonal({0.8661, 0.1339, 0.0, 0.0});
  const double oracle_err = (oracle_projection(paper_case) - to_eigen(want)).norm();
  const double mine_err = frobenius_distance(project_density(paper_case).matrix(), want.matrix());
  return {worst <= 1e-8 && oracle_err <= 1e-12 && mine_err <= 1e-12,
          fmt("max deviation from oracle %.2e; worked example oracle %.1e, ours %.1e", worst,
              oracle_err, mine_err)};
}

Outcome trace_relaxation() {
  Rng rng(1004);
  double worst = 0.0;
  int differing = 0;
  for (int t = 0; t < 20; ++t) {
    const auto chi = physchan::testing::random_channel(rng);
    const double d =
        trace_relaxation_check(physchan::testing::poisson_counts(chi, 10000, 400 + t));
    worst = std::max(worst, d);
    if (d > 1e-4) ++differing;
  }
  return {worst <= 1e-4, fmt("max ||chi_eq - chi_le||_F = %.2e; %d of 20 datasets exceed 1e-4",
                             worst, differing)};
}

Outcome gradient_checks() {
  Rng rng(1005);
  const auto& tensor = tomographic_tensor();
  double worst_state = 0.0, worst_process = 0.0;
  auto rel = [](double fd, double an) { return std::abs(fd - an) / std::max(1.0, std::abs(an)); };
  for (int t = 0; t < 20; ++t) {
    const auto rho = physchan::testing::random_density(2, rng);
    std::uniform_int_distribution<Count> count(1, 1000);
    const StateCounts sc({{Polarization::H, count(rng), 1000},
                          {Polarization::V, count(rng), 1000},
                          {Polarization::D, count(rng), 1000},
                          {Polarization::R, count(rng), 1000}});
    const auto chi = physchan::testing::random_feasible(4, rng);
    const auto pc = physchan::testing::poisson_counts(physchan::testing::random_channel(rng), 1000, t);
    const auto gs = qst_gradient(rho, sc);
    const auto gp = qpt_gradient(chi, pc, tensor);
    // Every real coordinate direction of the Hermitian matrix space.
    auto coordinate_dirs = [](std::size_t d) {
      std::vector<HermitianMatrix> dirs;
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = r; c < d; ++c) {
          for (Complex unit : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
            if (r == c && unit.imag() != 0.0) continue;
            ComplexMatrix e(d, d);
            e(r, c) = unit;
            e(c, r) = std::conj(unit);
            dirs.emplace_back(e);
          }
        }
      }
      return dirs;
    };
    const double h = 1e-6;
    for (const auto& e : coordinate_dirs(2)) {
      const double fd = (qst_objective(rho + e * h, sc) - qst_objective(rho - e * h, sc)) / (2 * h);
      worst_state = std::max(worst_state, rel(fd, inner(gs, e)));
    }
    for (const auto& e : coordinate_dirs(4)) {
      const double fd =
          (qpt_objective(chi + e * h, pc, tensor) - qpt_objective(chi - e * h, pc, tensor)) / (2 * h);
      worst_process = std::max(worst_process, rel(fd, inner(gp, e)));
    }
  }
  return {worst_state <= 1e-6 && worst_process <= 1e-6,
          fmt("max relative error: state %.2e, process %.2e", worst_state, worst_process)};
}

Outcome descent_and_optimality() {
  Rng rng(1006);
  const auto& tensor = tomographic_tensor();
  bool monotone = true;
  double worst_vi = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto counts =
        physchan::testing::poisson_counts(physchan::testing::random_channel(rng), 1000, 600 + t);
    const auto est = qpt_solve(counts);
    const auto& tr = est.report.objective_trace;
    for (std::size_t k = 1; k < tr.size(); ++k) monotone = monotone && tr[k] <= tr[k - 1] + 1e-12;
    const auto& x = est.chi.matrix();
    const auto g = qpt_gradient(x, counts, tensor);
    for (int k = 0; k < 1000; ++k) {
      worst_vi = std::min(worst_vi, inner(g, physchan::testing::random_feasible(4, rng) - x));
    }
  }
  return {monotone && worst_vi >= -1e-6,
          fmt("trace monotone: %s, min <grad, X - chi> = %.2e", monotone ? "yes" : "no", worst_vi)};
}

Outcome fidelity_identities() {
  Rng rng(1007);
  const auto ideal = chi_ideal();
  double self = 0.0, shortcut = 0.0, symmetry = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto a = physchan::testing::random_channel(rng);
    const auto b = physchan::testing::random_channel(rng);
    self = std::max(self, std::abs(process_fidelity(a, a) - 1.0));
    shortcut = std::max(shortcut,
                        std::abs(process_fidelity(a, ideal) - std::sqrt(a.matrix()(0, 0).real())));
    symmetry = std::max(symmetry, std::abs(process_fidelity(a, b) - process_fidelity(b, a)));
  }
  return {self <= 1e-10 && shortcut <= 1e-10 && symmetry <= 1e-8,
          fmt("self %.1e, rank-one shortcut %.1e, symmetry %.1e", self, shortcut, symmetry)};
}

Outcome deviation_comparison() {
  Rng rng(1008);
  const int trials = 100;
  int wins = 0;
  double trace_gap = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto chi = physchan::testing::near_identity_channel(rng, 0.2, 0.05);
    const auto counts = physchan::testing::poisson_counts(chi, 500, 800 + t);
    const auto experimental = experimental_states(counts, kTomographicStates);
    const auto convex = qpt_solve(counts).chi;
    const ChiMatrix projected(project_density(qpt_standard_inversion(counts).chi.matrix()));
    const double d_convex = average_state_deviation(convex, kTomographicStates, experimental);
    const double d_projected = average_state_deviation(projected, kTomographicStates, experimental);
    if (d_convex <= d_projected) ++wins;
    for (auto in : kTomographicStates) {
      trace_gap = std::max(trace_gap, std::abs(apply_chi(convex, pure_state(in)).trace() - 1.0));
    }
  }
  return {wins * 10 >= trials * 9,
          fmt("convex fit no worse in %d of %d datasets; max |Tr E(rho) - 1| of convex fit %.3f",
              wins, trials, trace_gap)};
}

Outcome monte_carlo() {
  const auto channel = channels::depolarizing(0.3);
  const auto small = simulate(channel, 2000, 0, Grid::g4x4, Noise::none).process_counts();
  const auto large = simulate(channel, 8000, 0, Grid::g4x4, Noise::none).process_counts();
  const auto a = monte_carlo_fidelity(small, chi_ideal(), 200, 99, {});
  const auto b = monte_carlo_fidelity(small, chi_ideal(), 200, 99, {}, 1);
  const auto c = monte_carlo_fidelity(large, chi_ideal(), 200, 99, {});
  const double ratio = a.stddev / c.stddev;
  return {a == b && ratio >= 1.5 && ratio <= 2.7,
          fmt("identical reruns: %s; std %.5f (N=2000) / %.5f (N=8000) = %.3f", a == b ? "yes" : "no",
              a.stddev, c.stddev, ratio)};
}

Outcome runtime_parity() {
  Rng rng(1010);
  const auto counts =
      physchan::testing::poisson_counts(physchan::testing::random_channel(rng), 10000, 1);
  const auto t0 = Clock::now();
  const auto est = qpt_solve(counts);
  const double elapsed = seconds_since(t0);
  return {elapsed < 2.0 && est.report.converged,
          fmt("one solve took %.4f s, %d iterations", elapsed, est.report.iterations)};
}

}  // namespace

int main() {
  report(1, "noiseless round trip", noiseless_round_trip);
  report(2, "physicality guarantee", physicality_guarantee);
  report(3, "projection oracle", projection_oracle);
  report(4, "trace-relaxation equivalence", trace_relaxation);
  report(5, "gradient checks", gradient_checks);
  report(6, "descent and optimality certificate", descent_and_optimality);
  report(7, "fidelity identities", fidelity_identities);
  report(8, "deviation comparison", deviation_comparison);
  report(9, "monte carlo determinism/concentration", monte_carlo);
  report(10, "runtime parity", runtime_parity);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
