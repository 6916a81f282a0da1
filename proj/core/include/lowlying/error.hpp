// Copyright 2026 The lowlying Authors.
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

#ifndef LOWLYING_ERROR_HPP_
#define LOWLYING_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace lowlying {

// Machine-readable failure categories. The CLI maps these onto exit codes
// and the "error" field of its records.
enum class ErrorCode {
  kInvalidArgument,
  kNonConvergence,
  kParityMismatch,
  kSupportViolation,
  kBelowMinRank,
  kDegenerateGenerator,
  kUnsupportedFamily,
  kNoValidCandidate,
  kInfeasible,
  kParse,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Thrown when adaptive integration exhausts its budget. Carries the best
// estimate reached so callers can decide whether it is good enough.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& message, double best_estimate,
                  double error_estimate)
      : Error(ErrorCode::kNonConvergence, message),
        best_estimate_(best_estimate),
        error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

}  // namespace lowlying

#endif  // LOWLYING_ERROR_HPP_
