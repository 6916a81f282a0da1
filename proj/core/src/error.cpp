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

#include "lowlying/error.hpp"

namespace lowlying {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kNonConvergence: return "non_convergence";
    case ErrorCode::kParityMismatch: return "parity_mismatch";
    case ErrorCode::kSupportViolation: return "support_violation";
    case ErrorCode::kBelowMinRank: return "below_min_rank";
    case ErrorCode::kDegenerateGenerator: return "degenerate_generator";
    case ErrorCode::kUnsupportedFamily: return "unsupported_family";
    case ErrorCode::kNoValidCandidate: return "no_valid_candidate";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kParse: return "parse_error";
  }
  return "unknown";
}

}  // namespace lowlying
