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

// JSON dataset files (photon counts), matrix serialization and the synthetic
// data generator. The schema is documented in docs/file-formats.md.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "physchan/counts.hpp"
#include "physchan/quantum.hpp"

namespace physchan {

inline constexpr std::string_view kSchemaVersion = "1";
inline constexpr std::string_view kConventionNote =
    "H=|1>, V=|0>, D=(|1>+|0>)/sqrt2, A=(|1>-|0>)/sqrt2, R=(|1>+i|0>)/sqrt2, "
    "L=(|1>-i|0>)/sqrt2; basis index 0 is H";

enum class DatasetKind { state_counts, process_counts };

struct DatasetRecord {
  std::optional<Polarization> input;  // process kind only
  Polarization projector;
  Count count = 0;
  std::optional<Count> n_override;

  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

struct DatasetFile {
  std::string schema_version{kSchemaVersion};
  DatasetKind kind = DatasetKind::process_counts;
  std::string convention{kConventionNote};
  Count photons = 0;  // default N for every record
  std::vector<DatasetRecord> records;

  StateCounts state_counts() const;
  ProcessCounts process_counts() const;

  friend bool operator==(const DatasetFile&, const DatasetFile&) = default;
};

nlohmann::json to_json(const DatasetFile& file);
/// Validates the schema; errors name the offending record.
DatasetFile dataset_from_json(const nlohmann::json& j);

DatasetFile read_dataset(const std::filesystem::path& path);
void write_dataset(const std::filesystem::path& path, const DatasetFile& file);

using ParsedCounts = std::variant<StateCounts, ProcessCounts>;
ParsedCounts parse_dataset(const std::filesystem::path& path);

DatasetFile to_dataset(const ProcessCounts& counts);

/// {"real": [[...]], "imag": [[...]]}
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json chi_to_json(const ChiMatrix& chi);
/// Accepts a χ object ({"real", "imag", "kind"?}) or any file object carrying
/// one under the key "chi".
ChiMatrix chi_from_json(const nlohmann::json& j);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// identity | bitflip(p) | phaseflip(p) | depolarizing(p) | file:<path>;
/// "name:p" is accepted as well as "name(p)".
ChiMatrix parse_channel(std::string_view spec);

enum class Grid { g4x4, g6x6 };
enum class Noise { poisson, none };

std::span<const Polarization> grid_states(Grid grid);

/// Counts n_ij ~ Poisson(N p_ij) (or round(N p_ij) without noise) for every
/// cell of the grid, p_ij = predicted_prob(χ, i, j). Deterministic per seed.
DatasetFile simulate(const ChiMatrix& chi, Count photons, std::uint64_t seed, Grid grid,
                     Noise noise);

}  // namespace physchan
