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

#include "lowlying/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lowlying/error.hpp"

namespace lowlying {
namespace {

void require_orthogonal_split(SymmetryGroup family) {
  if (family != SymmetryGroup::kSOeven && family != SymmetryGroup::kSOodd) {
    throw Error(ErrorCode::kUnsupportedFamily,
                "bounds are implemented for so-even and so-odd; got " +
                    std::string(group_name(family)));
  }
}

}  // namespace

std::string Method::name() const {
  switch (kind) {
    case MethodKind::kLevel1: return "level1";
    case MethodKind::kLevel2: return "level2";
    case MethodKind::kMoment:
      if (order == 4) return "moment4";
      return "moment2m:" + std::to_string(order / 2);
  }
  return "?";
}

Method parse_method(const std::string& text) {
  if (text == "level1") return Method::level1();
  if (text == "level2") return Method::level2();
  if (text == "moment4") return Method::moment(4);
  const std::string prefix = "moment2m:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string tail = text.substr(prefix.size());
    std::size_t used = 0;
    int m = 0;
    try {
      m = std::stoi(tail, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == tail.size() && m >= 1 && 2 * m <= kMaxMatchingSize) {
      return Method::moment(2 * m);
    }
  }
  throw Error(ErrorCode::kParse,
              "unknown method '" + text +
                  "' (expected level1, level2, moment4 or moment2m:<m>)");
}

ReferenceExpectation optimal_level1_reference(SymmetryGroup family) {
  require_orthogonal_split(family);
  if (family == SymmetryGroup::kSOeven) {
    return {0.86454, "optimal 1-level, support (-2,2), so-even"};
  }
  return {1.11454, "optimal 1-level, support (-2,2), so-odd"};
}

ReferenceExpectation optimal_level2_reference(SymmetryGroup family) {
  require_orthogonal_split(family);
  if (family == SymmetryGroup::kSOeven) {
    return {0.378449, "optimal 2-level, support (-1,1), so-even"};
  }
  // Row-constant of the published so-odd 2-level column, bound * (r-1)^2.
  return {1.079086, "optimal 2-level, support (-1,1), so-odd"};
}

void check_parity(SymmetryGroup family, int rank) {
  require_orthogonal_split(family);
  if (rank < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "rank must be a positive integer, got " + std::to_string(rank));
  }
  const bool even = rank % 2 == 0;
  if (family == SymmetryGroup::kSOeven && !even) {
    throw Error(ErrorCode::kParityMismatch,
                "so-even families vanish only to even order; rank " +
                    std::to_string(rank) + " is odd");
  }
  if (family == SymmetryGroup::kSOodd && even) {
    throw Error(ErrorCode::kParityMismatch,
                "so-odd families vanish only to odd order; rank " +
                    std::to_string(rank) + " is even");
  }
}

double level2_coefficient(int rank) {
  if (rank % 2 == 0) return static_cast<double>(rank) * (rank - 2);
  const double half = rank - 1;
  return half * half;
}

BoundResult bound_level1(const ReferenceExpectation& ref, SymmetryGroup family,
                         int rank) {
  check_parity(family, rank);
  BoundResult out;
  out.family = family;
  out.rank = rank;
  out.method = Method::level1();
  out.test_functions = {ref.label};
  out.expectation = ref.value;
  out.denominator = rank;
  out.upper_bound = ref.value / rank;
  return out;
}

BoundResult bound_level1(const TestFunction& tf, SymmetryGroup family,
                         int rank, const QuadratureSettings& settings) {
  check_parity(family, rank);
  BoundResult out = bound_level1(
      ReferenceExpectation{expectation_1level(tf, family, settings), tf.label()},
      family, rank);
  return out;
}

BoundResult bound_level2(const ReferenceExpectation& ref, SymmetryGroup family,
                         int rank) {
  check_parity(family, rank);
  const double coefficient = level2_coefficient(rank);
  if (!(coefficient > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "the 2-level coefficient vanishes at rank " +
                    std::to_string(rank));
  }
  BoundResult out;
  out.family = family;
  out.rank = rank;
  out.method = Method::level2();
  out.test_functions = {ref.label};
  out.expectation = ref.value;
  out.denominator = coefficient;
  out.upper_bound = ref.value / coefficient;
  return out;
}

BoundResult bound_level2(const TestFunction& tf1, const TestFunction& tf2,
                         SymmetryGroup family, int rank,
                         const QuadratureSettings& settings) {
  check_parity(family, rank);
  if (!(level2_coefficient(rank) > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "the 2-level coefficient vanishes at rank " +
                    std::to_string(rank));
  }
  const double e = expectation_2level(tf1, tf2, family, settings);
  BoundResult out = bound_level2(ReferenceExpectation{e, ""}, family, rank);
  out.test_functions = {tf1.label(), tf2.label()};
  return out;
}

double moment_denominator(std::span<const TestFunction> slots, int rank) {
  double denominator = 1.0;
  for (const TestFunction& tf : slots) {
    const double factor = rank * tf.phi0() - one_level_mean(tf);
    if (!(factor > 0.0)) {
      std::ostringstream msg;
      msg.precision(8);
      msg << "rank " << rank << " is below c_phi = " << min_rank(tf)
          << " for " << tf.label() << " (need r phi(0) > phihat(0) + "
          << "phi(0)/2, ratio " << tf.phihat0() / tf.phi0() + 0.5 << ")";
      throw Error(ErrorCode::kBelowMinRank, msg.str());
    }
    denominator *= factor * factor;
  }
  return denominator;
}

BoundResult bound_moment(std::span<const TestFunction> slots,
                         SymmetryGroup family, int rank, int weight_k,
                         Regime regime, const QuadratureSettings& settings) {
  check_parity(family, rank);
  if (slots.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "moment bounds need at least one test-function slot");
  }
  const double denominator = moment_denominator(slots, rank);

  MomentRequest request;
  request.family = family;
  request.weight_k = weight_k;
  request.regime = regime;
  for (const TestFunction& tf : slots) {
    request.test_functions.push_back(tf);
    request.test_functions.push_back(tf);
  }
  const MomentResult moment = centered_moment(request, settings);

  BoundResult out;
  out.family = family;
  out.rank = rank;
  out.method = Method::moment(static_cast<int>(2 * slots.size()));
  for (const TestFunction& tf : slots) out.test_functions.push_back(tf.label());
  out.denominator = denominator;
  out.moment_value = moment.value;
  out.regime = moment.regime;
  out.upper_bound = moment.value / denominator;
  return out;
}

BoundResult evaluate_candidate(const Candidate& candidate, SymmetryGroup family,
                               int rank, const QuadratureSettings& settings) {
  const auto& tfs = candidate.test_functions;
  switch (candidate.method.kind) {
    case MethodKind::kLevel1:
      if (candidate.reference) {
        return bound_level1(*candidate.reference, family, rank);
      }
      if (tfs.size() != 1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "level1 takes one test function or a reference value");
      }
      return bound_level1(tfs[0], family, rank, settings);
    case MethodKind::kLevel2:
      if (candidate.reference) {
        return bound_level2(*candidate.reference, family, rank);
      }
      if (tfs.size() == 1) {
        return bound_level2(tfs[0], tfs[0], family, rank, settings);
      }
      if (tfs.size() != 2) {
        throw Error(ErrorCode::kInvalidArgument,
                    "level2 takes one or two test functions or a reference");
      }
      return bound_level2(tfs[0], tfs[1], family, rank, settings);
    case MethodKind::kMoment: {
      const auto slots = static_cast<std::size_t>(candidate.method.order / 2);
      if (tfs.empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "moment methods need test functions");
      }
      std::vector<TestFunction> filled = tfs;
      // A single function fills every slot.
      if (filled.size() == 1) filled.assign(slots, tfs[0]);
      if (filled.size() != slots) {
        throw Error(ErrorCode::kInvalidArgument,
                    candidate.method.name() + " needs " +
                        std::to_string(slots) + " test-function slots, got " +
                        std::to_string(tfs.size()));
      }
      return bound_moment(filled, family, rank, candidate.weight_k,
                          candidate.regime, settings);
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown method");
}

BoundResult best_bound(int rank, SymmetryGroup family,
                       std::span<const Candidate> candidates,
                       const QuadratureSettings& settings) {
  std::optional<BoundResult> best;
  std::ostringstream rejections;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    try {
      BoundResult r = evaluate_candidate(candidates[i], family, rank, settings);
      if (!best || r.upper_bound < best->upper_bound) best = std::move(r);
    } catch (const Error& e) {
      rejections << "\n  candidate " << i << " ("
                 << candidates[i].method.name() << "): " << e.what();
    }
  }
  if (!best) {
    throw Error(ErrorCode::kNoValidCandidate,
                candidates.empty()
                    ? std::string("no candidate methods were supplied")
                    : "no candidate satisfies its preconditions:" +
                          rejections.str());
  }
  return *best;
}

}  // namespace lowlying
