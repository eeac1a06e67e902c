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

#include <stdexcept>
#include <string>
#include <string_view>

namespace physchan {

/// Machine-readable category attached to every error raised by the library.
enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  not_converged,
  not_psd,
  parse_error,
  schema_error,
  io_error,
  solver_failure,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the eigensolver when the off-diagonal mass does not vanish
/// within the sweep cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, double residual)
      : Error(ErrorCode::not_converged, message), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Raised when a matrix required to be positive semidefinite has an
/// eigenvalue below the tolerance.
class NotPsdError : public Error {
 public:
  NotPsdError(const std::string& message, double eigenvalue)
      : Error(ErrorCode::not_psd, message), eigenvalue_(eigenvalue) {}

  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

}  // namespace physchan
