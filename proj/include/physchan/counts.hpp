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
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "physchan/quantum.hpp"

namespace physchan {

using Count = std::uint64_t;

inline constexpr Count kMaxCount = 1'000'000'000'000;

/// One projector setting of a state measurement: n photons detected out of N.
struct StateRecord {
  Polarization projector;
  Count count = 0;
  Count photons = 0;

  double frequency() const { return static_cast<double>(count) / static_cast<double>(photons); }
};

/// Photon counts n_i for projectors ψ_i on a single unknown state. Must cover
/// {H, V, D, R}; each projector may appear at most once.
class StateCounts {
 public:
  explicit StateCounts(std::vector<StateRecord> records);

  std::span<const StateRecord> records() const noexcept { return records_; }
  const StateRecord* find(Polarization projector) const;
  const StateRecord& at(Polarization projector) const;

 private:
  std::vector<StateRecord> records_;
};

struct ProcessRecord {
  Polarization input;
  Polarization projector;
  Count count = 0;
  Count photons = 0;

  double frequency() const { return static_cast<double>(count) / static_cast<double>(photons); }
};

/// Photon counts n_ij for input φ_i and projector ψ_j. Must cover the 4x4
/// grid {H, V, D, R}²; the full 6x6 grid is optional.
class ProcessCounts {
 public:
  explicit ProcessCounts(std::vector<ProcessRecord> records);

  std::span<const ProcessRecord> records() const noexcept { return records_; }
  const ProcessRecord* find(Polarization input, Polarization projector) const;
  const ProcessRecord& at(Polarization input, Polarization projector) const;
  bool covers(std::span<const Polarization> inputs, std::span<const Polarization> projectors) const;

  /// The records of one input state, as a state-tomography data set.
  StateCounts for_input(Polarization input,
                        std::span<const Polarization> projectors = kTomographicStates) const;

  /// Records restricted to a sub-grid, in grid order.
  ProcessCounts restrict_to(std::span<const Polarization> inputs,
                            std::span<const Polarization> projectors) const;

 private:
  std::vector<ProcessRecord> records_;
  std::map<std::pair<Polarization, Polarization>, std::size_t> index_;
};

}  // namespace physchan
