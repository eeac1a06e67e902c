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

#include "physchan/error.hpp"

namespace physchan {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "E_INVALID_ARGUMENT";
    case ErrorCode::dimension_mismatch: return "E_DIMENSION_MISMATCH";
    case ErrorCode::not_converged: return "E_NOT_CONVERGED";
    case ErrorCode::not_psd: return "E_NOT_PSD";
    case ErrorCode::parse_error: return "E_PARSE";
    case ErrorCode::schema_error: return "E_SCHEMA";
    case ErrorCode::io_error: return "E_IO";
    case ErrorCode::solver_failure: return "E_SOLVER";
  }
  return "E_UNKNOWN";
}

}  // namespace physchan
