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

#ifndef LOWLYING_BOUNDS_HPP_
#define LOWLYING_BOUNDS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lowlying/kernels.hpp"
#include "lowlying/moments.hpp"
#include "lowlying/quadrature.hpp"
#include "lowlying/testfunc.hpp"

namespace lowlying {

enum class MethodKind { kLevel1, kLevel2, kMoment };

struct Method {
  MethodKind kind = MethodKind::kLevel1;
  int order = 0;  // moment order 2m for kMoment, unused otherwise

  static Method level1() { return {MethodKind::kLevel1, 1}; }
  static Method level2() { return {MethodKind::kLevel2, 2}; }
  static Method moment(int two_m) { return {MethodKind::kMoment, two_m}; }

  // "level1", "level2", "moment4", "moment2m:3" for order 6, ...
  std::string name() const;
  bool operator==(const Method&) const = default;
};

// Parses the CLI spelling: level1 | level2 | moment4 | moment2m:<m>.
Method parse_method(const std::string& text);

// A published expectation used in place of a test function, for the
// optimal 1- and 2-level functions whose construction is out of scope here.
struct ReferenceExpectation {
  double value = 0.0;
  std::string label;
};

// Expectation constants behind the 1-/2-level comparison columns:
// SO(even) 0.86454 / 0.378449, SO(odd) 1.11454 / 1.079086.
ReferenceExpectation optimal_level1_reference(SymmetryGroup family);
ReferenceExpectation optimal_level2_reference(SymmetryGroup family);

struct BoundResult {
  SymmetryGroup family = SymmetryGroup::kSOeven;
  int rank = 0;
  Method method;
  std::vector<std::string> test_functions;
  double upper_bound = 0.0;
  double denominator = 0.0;
  std::optional<double> moment_value;
  std::optional<double> expectation;
  std::optional<Regime> regime;
};

// Rank parity must match the family (even for SO(even), odd for SO(odd)).
// Other families are rejected with kUnsupportedFamily.
void check_parity(SymmetryGroup family, int rank);

// Coefficient of p_r in the 2-level inequality: r(r-2) for even r,
// (r-1)^2 for odd r.
double level2_coefficient(int rank);

BoundResult bound_level1(const TestFunction& tf, SymmetryGroup family,
                         int rank, const QuadratureSettings& settings = {});
BoundResult bound_level1(const ReferenceExpectation& ref, SymmetryGroup family,
                         int rank);

BoundResult bound_level2(const TestFunction& tf1, const TestFunction& tf2,
                         SymmetryGroup family, int rank,
                         const QuadratureSettings& settings = {});
BoundResult bound_level2(const ReferenceExpectation& ref, SymmetryGroup family,
                         int rank);

// Product over slots of (r phi_s(0) - (phihat_s(0) + phi_s(0)/2))^2.
// Throws kBelowMinRank if any factor is not strictly positive.
double moment_denominator(std::span<const TestFunction> slots, int rank);

// 2m-th moment bound: each slot is used twice, so the centered moment is
// taken over (s1, s1, s2, s2, ...).
BoundResult bound_moment(std::span<const TestFunction> slots,
                         SymmetryGroup family, int rank, int weight_k = 2,
                         Regime regime = Regime::kAuto,
                         const QuadratureSettings& settings = {});

struct Candidate {
  Method method;
  std::vector<TestFunction> test_functions;  // slots for moment methods
  std::optional<ReferenceExpectation> reference;
  int weight_k = 2;
  Regime regime = Regime::kAuto;
};

BoundResult evaluate_candidate(const Candidate& candidate, SymmetryGroup family,
                               int rank,
                               const QuadratureSettings& settings = {});

// Smallest upper bound among candidates whose preconditions hold. Throws
// kNoValidCandidate listing every rejection if none does.
BoundResult best_bound(int rank, SymmetryGroup family,
                       std::span<const Candidate> candidates,
                       const QuadratureSettings& settings = {});

}  // namespace lowlying

#endif  // LOWLYING_BOUNDS_HPP_
