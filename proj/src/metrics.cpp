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

#include "physchan/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "physchan/error.hpp"

namespace physchan {

double process_fidelity(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::dimension_mismatch, "process_fidelity: dimensions differ");
  const auto root_a = sqrt_psd(a);
  const auto root_b = sqrt_psd(b);
  return std::clamp(nuclear_norm(root_a.matrix() * root_b.matrix()), 0.0, 1.0);
}

double state_deviation(const HermitianMatrix& predicted, const HermitianMatrix& experimental) {
  if (predicted.dim() != experimental.dim()) {
    throw Error(ErrorCode::dimension_mismatch, "state_deviation: dimensions differ");
  }
  const double dist = frobenius_distance(predicted.matrix(), experimental.matrix());
  const double entries = static_cast<double>(predicted.dim() * predicted.dim());
  return dist * dist / entries;
}

double average_state_deviation(const ChiMatrix& chi, std::span<const Polarization> inputs,
                               std::span<const HermitianMatrix> experimental) {
  if (inputs.size() != experimental.size()) {
    throw Error(ErrorCode::dimension_mismatch, "average_state_deviation: list lengths differ");
  }
  if (inputs.empty()) throw Error(ErrorCode::invalid_argument, "average_state_deviation: no inputs");
  double total = 0.0;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    total += state_deviation(apply_chi(chi, pure_state(inputs[k])), experimental[k]);
  }
  return total / static_cast<double>(inputs.size());
}

std::vector<HermitianMatrix> experimental_states(const ProcessCounts& counts,
                                                 std::span<const Polarization> inputs,
                                                 const SolverSettings& settings) {
  std::vector<HermitianMatrix> out;
  out.reserve(inputs.size());
  for (auto in : inputs) out.push_back(qst_solve(counts.for_input(in), settings).rho.matrix());
  return out;
}

ResidualSet residual_set(const ChiMatrix& chi, const ProcessCounts& counts) {
  ResidualSet out;
  out.inputs.assign(kAllPolarizations.begin(), kAllPolarizations.end());
  out.projectors = out.inputs;

  std::vector<std::string> missing;
  for (auto in : out.inputs) {
    for (auto pr : out.projectors) {
      if (counts.find(in, pr) == nullptr) {
        missing.push_back("(" + std::string(to_string(in)) + "," + std::string(to_string(pr)) + ")");
      }
    }
  }
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << "residual analysis needs the 6x6 grid; missing";
    for (const auto& m : missing) msg << " " << m;
    throw Error(ErrorCode::schema_error, msg.str());
  }

  for (auto in : out.inputs) {
    const auto output = apply_chi(chi, pure_state(in));
    for (auto pr : out.projectors) {
      const double p = std::clamp(output.expectation(ket(pr)), 0.0, 1.0);
      out.residuals.push_back(p - counts.at(in, pr).frequency());
    }
  }

  const double n = static_cast<double>(out.residuals.size());
  out.mean = std::accumulate(out.residuals.begin(), out.residuals.end(), 0.0) / n;
  double m2 = 0.0, m3 = 0.0;
  for (double r : out.residuals) {
    const double d = r - out.mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  out.sigma = std::sqrt(m2);
  out.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
  return out;
}

std::vector<HistogramBin> histogram(std::span<const double> values, std::size_t bins) {
  if (bins == 0) throw Error(ErrorCode::invalid_argument, "histogram: zero bins");
  if (values.empty()) return {};
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it, hi = *hi_it;
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<HistogramBin> out(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b] = {lo + width * static_cast<double>(b), lo + width * static_cast<double>(b + 1), 0};
  }
  for (double v : values) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    ++out[std::min(b, bins - 1)].count;
  }
  return out;
}

ProcessCounts poisson_resample(const ProcessCounts& counts, std::mt19937_64& engine) {
  std::vector<ProcessRecord> records(counts.records().begin(), counts.records().end());
  for (auto& r : records) {
    if (r.count == 0) continue;
    std::poisson_distribution<Count> draw(static_cast<double>(r.count));
    r.count = draw(engine);
  }
  return ProcessCounts(std::move(records));
}

MonteCarloResult monte_carlo_fidelity(const ProcessCounts& counts, const ChiMatrix& target,
                                      int trials, std::uint64_t seed,
                                      const SolverSettings& settings, unsigned workers) {
  if (trials < 2) throw Error(ErrorCode::invalid_argument, "monte_carlo_fidelity: need at least 2 trials");
  settings.validate();

  std::vector<double> fidelity(static_cast<std::size_t>(trials), 0.0);
  std::vector<char> ok(static_cast<std::size_t>(trials), 0);
  std::atomic<int> next{0};

  auto worker = [&]() {
    for (int k = next++; k < trials; k = next++) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(k)};
      std::mt19937_64 engine(seq);
      try {
        const auto sample = poisson_resample(counts, engine);
        const auto fit = qpt_solve(sample, settings);
        if (!fit.report.converged) continue;
        fidelity[static_cast<std::size_t>(k)] = process_fidelity(fit.chi, target);
        ok[static_cast<std::size_t>(k)] = 1;
      } catch (const Error&) {
        // Recorded as a failed trial below.
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(trials));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  MonteCarloResult out;
  out.trials = trials;
  out.seed = seed;
  for (int k = 0; k < trials; ++k) {
    if (ok[static_cast<std::size_t>(k)]) {
      out.fidelities.push_back(fidelity[static_cast<std::size_t>(k)]);
    } else {
      out.failed_trials.push_back(k);
    }
  }
  if (out.fidelities.size() * 5 < static_cast<std::size_t>(trials) * 4 || out.fidelities.size() < 2) {
    std::ostringstream msg;
    msg << "monte_carlo_fidelity: only " << out.fidelities.size() << " of " << trials
        << " trials succeeded";
    throw Error(ErrorCode::solver_failure, msg.str());
  }
  const double n = static_cast<double>(out.fidelities.size());
  out.mean = std::accumulate(out.fidelities.begin(), out.fidelities.end(), 0.0) / n;
  double ss = 0.0;
  for (double f : out.fidelities) ss += (f - out.mean) * (f - out.mean);
  out.stddev = std::sqrt(ss / (n - 1.0));
  return out;
}

}  // namespace physchan
