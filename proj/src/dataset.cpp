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

#include "physchan/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "physchan/error.hpp"

namespace physchan {

using nlohmann::json;

namespace {

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::schema_error, where + ": " + what);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) schema_fail(where, "unknown field \"" + key + "\"");
  }
}

Count read_count(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (v.is_number_integer() && !v.is_number_unsigned()) {
    schema_fail(where, std::string(key) + " must be nonnegative, got " + v.dump());
  }
  if (!v.is_number_unsigned()) schema_fail(where, std::string(key) + " must be an integer");
  const auto c = v.get<std::uint64_t>();
  if (c > kMaxCount) schema_fail(where, std::string(key) + " exceeds the sanity cap 1e12");
  return c;
}

Polarization read_label(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_string()) schema_fail(where, std::string(key) + " must be a string");
  const auto s = v.get<std::string>();
  const auto p = parse_polarization(s);
  if (!p) schema_fail(where, "unknown label \"" + s + "\" (expected one of H V D A R L)");
  return *p;
}

std::string_view kind_name(DatasetKind k) {
  return k == DatasetKind::state_counts ? "state_counts" : "process_counts";
}

std::string_view chi_kind_name(ChiKind k) {
  switch (k) {
    case ChiKind::physical: return "physical";
    case ChiKind::trace_non_increasing: return "trace_non_increasing";
    case ChiKind::unconstrained: return "unconstrained";
  }
  return "physical";
}

double parse_parameter(std::string_view text, std::string_view spec) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw Error(ErrorCode::invalid_argument, "bad channel parameter in \"" + std::string(spec) + "\"");
  }
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------

StateCounts DatasetFile::state_counts() const {
  if (kind != DatasetKind::state_counts) schema_fail("dataset", "kind is not state_counts");
  std::vector<StateRecord> out;
  for (const auto& r : records) out.push_back({r.projector, r.count, r.n_override.value_or(photons)});
  return StateCounts(std::move(out));
}

ProcessCounts DatasetFile::process_counts() const {
  if (kind != DatasetKind::process_counts) schema_fail("dataset", "kind is not process_counts");
  std::vector<ProcessRecord> out;
  for (const auto& r : records) {
    if (!r.input) schema_fail("dataset", "process record without input");
    out.push_back({*r.input, r.projector, r.count, r.n_override.value_or(photons)});
  }
  return ProcessCounts(std::move(out));
}

json to_json(const DatasetFile& file) {
  json records = json::array();
  for (const auto& r : file.records) {
    json rec;
    if (r.input) rec["input"] = std::string(to_string(*r.input));
    rec["projector"] = std::string(to_string(r.projector));
    rec["count"] = r.count;
    if (r.n_override) rec["N_override"] = *r.n_override;
    records.push_back(std::move(rec));
  }
  return json{{"schema_version", file.schema_version},
              {"kind", std::string(kind_name(file.kind))},
              {"convention", file.convention},
              {"N", file.photons},
              {"records", std::move(records)}};
}

DatasetFile dataset_from_json(const json& j) {
  if (!j.is_object()) schema_fail("dataset", "top level must be an object");
  reject_unknown(j, {"schema_version", "kind", "convention", "N", "records"}, "dataset");
  for (const char* key : {"schema_version", "kind", "N", "records"}) {
    if (!j.contains(key)) schema_fail("dataset", std::string("missing field \"") + key + "\"");
  }

  DatasetFile out;
  if (!j["schema_version"].is_string() || j["schema_version"].get<std::string>() != kSchemaVersion) {
    schema_fail("dataset", "schema_version must be \"1\"");
  }
  const auto kind = j["kind"].is_string() ? j["kind"].get<std::string>() : std::string{};
  if (kind == "state_counts") {
    out.kind = DatasetKind::state_counts;
  } else if (kind == "process_counts") {
    out.kind = DatasetKind::process_counts;
  } else {
    schema_fail("dataset", "kind must be \"state_counts\" or \"process_counts\"");
  }
  if (j.contains("convention")) {
    if (!j["convention"].is_string()) schema_fail("dataset", "convention must be a string");
    out.convention = j["convention"].get<std::string>();
  }
  out.photons = read_count(j, "N", "dataset");
  if (out.photons == 0) schema_fail("dataset", "N must be positive");

  if (!j["records"].is_array()) schema_fail("dataset", "records must be an array");
  const bool process = out.kind == DatasetKind::process_counts;
  std::size_t index = 0;
  for (const auto& rec : j["records"]) {
    const std::string where = "records[" + std::to_string(index++) + "]";
    if (!rec.is_object()) schema_fail(where, "must be an object");
    reject_unknown(rec, {"input", "projector", "count", "N_override"}, where);
    if (!rec.contains("projector")) schema_fail(where, "missing field \"projector\"");
    if (!rec.contains("count")) schema_fail(where, "missing field \"count\"");
    DatasetRecord r;
    if (rec.contains("input")) {
      if (!process) schema_fail(where, "state_counts records take no input");
      r.input = read_label(rec, "input", where);
    } else if (process) {
      schema_fail(where, "missing field \"input\"");
    }
    r.projector = read_label(rec, "projector", where);
    r.count = read_count(rec, "count", where);
    if (rec.contains("N_override")) {
      r.n_override = read_count(rec, "N_override", where);
      if (*r.n_override == 0) schema_fail(where, "N_override must be positive");
    }
    out.records.push_back(r);
  }
  return out;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::io_error, "write failed for " + path.string());
}

DatasetFile read_dataset(const std::filesystem::path& path) {
  try {
    return dataset_from_json(read_json(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::schema_error) {
      throw Error(ErrorCode::schema_error, path.string() + ": " + e.what());
    }
    throw;
  }
}

void write_dataset(const std::filesystem::path& path, const DatasetFile& file) {
  write_json(path, to_json(file));
}

ParsedCounts parse_dataset(const std::filesystem::path& path) {
  const auto file = read_dataset(path);
  try {
    if (file.kind == DatasetKind::state_counts) return file.state_counts();
    return file.process_counts();
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

DatasetFile to_dataset(const ProcessCounts& counts) {
  DatasetFile out;
  out.kind = DatasetKind::process_counts;
  out.photons = counts.records().front().photons;
  for (const auto& r : counts.records()) {
    DatasetRecord rec{r.input, r.projector, r.count, std::nullopt};
    if (r.photons != out.photons) rec.n_override = r.photons;
    out.records.push_back(rec);
  }
  return out;
}

// ---------------------------------------------------------------------------

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row_re = json::array();
    json row_im = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      row_re.push_back(m(r, c).real());
      row_im.push_back(m(r, c).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  return json{{"real", std::move(re)}, {"imag", std::move(im)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("real") || !j.contains("imag")) {
    schema_fail("matrix", "expected an object with \"real\" and \"imag\" arrays");
  }
  const auto& re = j["real"];
  const auto& im = j["imag"];
  if (!re.is_array() || !im.is_array() || re.size() != im.size() || re.empty()) {
    schema_fail("matrix", "\"real\" and \"imag\" must be equal-size nonempty arrays");
  }
  const std::size_t rows = re.size();
  const std::size_t cols = re[0].is_array() ? re[0].size() : 0;
  std::vector<Complex> entries;
  entries.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!re[r].is_array() || !im[r].is_array() || re[r].size() != cols || im[r].size() != cols) {
      schema_fail("matrix", "row " + std::to_string(r) + " has the wrong length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!re[r][c].is_number() || !im[r][c].is_number()) {
        schema_fail("matrix", "non-numeric entry at row " + std::to_string(r));
      }
      entries.emplace_back(re[r][c].get<double>(), im[r][c].get<double>());
    }
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

json chi_to_json(const ChiMatrix& chi) {
  auto j = matrix_to_json(chi.matrix());
  j["kind"] = std::string(chi_kind_name(chi.kind()));
  return j;
}

ChiMatrix chi_from_json(const json& j) {
  if (j.is_object() && j.contains("chi")) return chi_from_json(j["chi"]);
  const HermitianMatrix m(matrix_from_json(j));
  ChiKind kind = ChiKind::physical;
  if (j.contains("kind")) {
    const auto name = j["kind"].is_string() ? j["kind"].get<std::string>() : std::string{};
    if (name == "physical") {
      kind = ChiKind::physical;
    } else if (name == "trace_non_increasing") {
      kind = ChiKind::trace_non_increasing;
    } else if (name == "unconstrained") {
      kind = ChiKind::unconstrained;
    } else {
      schema_fail("chi", "unknown kind \"" + name + "\"");
    }
  }
  return ChiMatrix(m, kind);
}

ChiMatrix parse_channel(std::string_view spec) {
  if (spec.starts_with("file:")) {
    const auto path = std::filesystem::path(std::string(spec.substr(5)));
    const auto chi = chi_from_json(read_json(path));
    if (!chi.is_physical()) {
      throw Error(ErrorCode::invalid_argument, "channel file holds an unconstrained chi matrix");
    }
    return chi;
  }
  std::string_view name = spec;
  std::optional<double> param;
  if (const auto open = spec.find('('); open != std::string_view::npos) {
    if (!spec.ends_with(")")) {
      throw Error(ErrorCode::invalid_argument, "unbalanced parenthesis in \"" + std::string(spec) + "\"");
    }
    name = spec.substr(0, open);
    param = parse_parameter(spec.substr(open + 1, spec.size() - open - 2), spec);
  } else if (const auto colon = spec.find(':'); colon != std::string_view::npos) {
    name = spec.substr(0, colon);
    param = parse_parameter(spec.substr(colon + 1), spec);
  }

  if (name == "identity") {
    if (param) throw Error(ErrorCode::invalid_argument, "identity takes no parameter");
    return channels::identity();
  }
  if (!param) {
    throw Error(ErrorCode::invalid_argument,
                "channel \"" + std::string(name) + "\" needs a parameter, e.g. " + std::string(name) + "(0.1)");
  }
  if (name == "bitflip") return channels::bit_flip(*param);
  if (name == "phaseflip") return channels::phase_flip(*param);
  if (name == "depolarizing") return channels::depolarizing(*param);
  throw Error(ErrorCode::invalid_argument, "unknown channel \"" + std::string(name) + "\"");
}

std::span<const Polarization> grid_states(Grid grid) {
  if (grid == Grid::g4x4) return kTomographicStates;
  return kAllPolarizations;
}

DatasetFile simulate(const ChiMatrix& chi, Count photons, std::uint64_t seed, Grid grid,
                     Noise noise) {
  if (!chi.is_physical()) throw Error(ErrorCode::invalid_argument, "simulate: chi must be physical");
  if (photons == 0 || photons > kMaxCount) {
    throw Error(ErrorCode::invalid_argument, "simulate: photon number out of range");
  }
  std::mt19937_64 engine(seed);
  const auto states = grid_states(grid);
  const double n = static_cast<double>(photons);

  DatasetFile out;
  out.kind = DatasetKind::process_counts;
  out.photons = photons;
  for (auto in : states) {
    const auto output = apply_chi(chi, pure_state(in));
    for (auto pr : states) {
      const double p = std::clamp(output.expectation(ket(pr)), 0.0, 1.0);
      const double mean = n * p;
      Count c = 0;
      if (noise == Noise::none) {
        c = static_cast<Count>(std::llround(mean));
      } else if (mean > 0.0) {
        std::poisson_distribution<Count> draw(mean);
        c = draw(engine);
      }
      out.records.push_back({in, pr, c, std::nullopt});
    }
  }
  return out;
}

}  // namespace physchan
