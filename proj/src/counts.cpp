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

#include "physchan/counts.hpp"

#include <algorithm>
#include <sstream>

#include "physchan/error.hpp"

namespace physchan {

namespace {

void check_record(Count count, Count photons, const std::string& where) {
  if (photons == 0) throw Error(ErrorCode::invalid_argument, where + ": N must be positive");
  if (count > kMaxCount || photons > kMaxCount) {
    throw Error(ErrorCode::invalid_argument, where + ": count exceeds sanity cap 1e12");
  }
}

std::string cell_name(Polarization in, Polarization pr) {
  std::ostringstream s;
  s << "(" << to_string(in) << "," << to_string(pr) << ")";
  return s.str();
}

}  // namespace

StateCounts::StateCounts(std::vector<StateRecord> records) : records_(std::move(records)) {
  for (std::size_t k = 0; k < records_.size(); ++k) {
    const auto& r = records_[k];
    check_record(r.count, r.photons, "state record " + std::string(to_string(r.projector)));
    for (std::size_t l = 0; l < k; ++l) {
      if (records_[l].projector == r.projector) {
        throw Error(ErrorCode::schema_error,
                    "duplicate state record for projector " + std::string(to_string(r.projector)));
      }
    }
  }
  for (auto p : kTomographicStates) {
    if (find(p) == nullptr) {
      throw Error(ErrorCode::schema_error,
                  "state counts missing projector " + std::string(to_string(p)));
    }
  }
}

const StateRecord* StateCounts::find(Polarization projector) const {
  auto it = std::find_if(records_.begin(), records_.end(),
                         [&](const StateRecord& r) { return r.projector == projector; });
  return it == records_.end() ? nullptr : &*it;
}

const StateRecord& StateCounts::at(Polarization projector) const {
  const auto* r = find(projector);
  if (r == nullptr) {
    throw Error(ErrorCode::schema_error, "no record for projector " + std::string(to_string(projector)));
  }
  return *r;
}

ProcessCounts::ProcessCounts(std::vector<ProcessRecord> records) : records_(std::move(records)) {
  for (std::size_t k = 0; k < records_.size(); ++k) {
    const auto& r = records_[k];
    const auto name = cell_name(r.input, r.projector);
    check_record(r.count, r.photons, "process record " + name);
    if (!index_.emplace(std::make_pair(r.input, r.projector), k).second) {
      throw Error(ErrorCode::schema_error, "duplicate process record " + name);
    }
  }
  for (auto in : kTomographicStates) {
    for (auto pr : kTomographicStates) {
      if (find(in, pr) == nullptr) {
        throw Error(ErrorCode::schema_error, "process counts missing cell " + cell_name(in, pr));
      }
    }
  }
}

const ProcessRecord* ProcessCounts::find(Polarization input, Polarization projector) const {
  auto it = index_.find({input, projector});
  return it == index_.end() ? nullptr : &records_[it->second];
}

const ProcessRecord& ProcessCounts::at(Polarization input, Polarization projector) const {
  const auto* r = find(input, projector);
  if (r == nullptr) {
    throw Error(ErrorCode::schema_error, "process counts missing cell " + cell_name(input, projector));
  }
  return *r;
}

bool ProcessCounts::covers(std::span<const Polarization> inputs,
                           std::span<const Polarization> projectors) const {
  for (auto in : inputs) {
    for (auto pr : projectors) {
      if (find(in, pr) == nullptr) return false;
    }
  }
  return true;
}

StateCounts ProcessCounts::for_input(Polarization input,
                                     std::span<const Polarization> projectors) const {
  std::vector<StateRecord> out;
  out.reserve(projectors.size());
  for (auto pr : projectors) {
    const auto& r = at(input, pr);
    out.push_back({pr, r.count, r.photons});
  }
  return StateCounts(std::move(out));
}

ProcessCounts ProcessCounts::restrict_to(std::span<const Polarization> inputs,
                                         std::span<const Polarization> projectors) const {
  std::vector<ProcessRecord> out;
  out.reserve(inputs.size() * projectors.size());
  for (auto in : inputs) {
    for (auto pr : projectors) out.push_back(at(in, pr));
  }
  return ProcessCounts(std::move(out));
}

}  // namespace physchan
