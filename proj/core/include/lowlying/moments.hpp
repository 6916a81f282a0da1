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

#ifndef LOWLYING_MOMENTS_HPP_
#define LOWLYING_MOMENTS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lowlying/function_ref.hpp"
#include "lowlying/kernels.hpp"
#include "lowlying/quadrature.hpp"
#include "lowlying/testfunc.hpp"

namespace lowlying {

// A perfect matching of {0, ..., 2m-1}; pairs are stored with first < second
// and sorted by first element.
struct Matching {
  std::vector<std::pair<int, int>> pairs;

  bool operator==(const Matching&) const = default;
  // 1-based "12|34" rendering.
  std::string to_string() const;
};

// Largest 2m for which matchings are enumerated exhaustively.
inline constexpr int kMaxMatchingSize = 16;

// (2m - 1)!! for two_m = 2m; two_m must be even and positive.
std::uint64_t matching_count(int two_m);

// Calls `visit` once per perfect matching of {0, ..., two_m - 1}, in
// lexicographic order of the partner sequence.
void for_each_matching(
    int two_m,
    FunctionRef<void(std::span<const std::pair<int, int>>)> visit);

std::vector<Matching> enumerate_matchings(int two_m);

// sum over matchings of prod sigma2(tf_a, tf_b). Pair variances are computed
// once per unordered pair.
double matching_sum(std::span<const TestFunction> tfs,
                    const QuadratureSettings& settings = {});

// (-1)^(n-1) 2^(n-1) [ int prod phi_j(x) sin(2 pi x)/(2 pi x) dx
//                      - prod phi_j(0) / 2 ]
double r_term(std::span<const TestFunction> tfs,
              const QuadratureSettings& settings = {});

enum class Regime { kAuto, kWithR, kMockGaussian };

std::string_view regime_name(Regime r);
Regime parse_regime(std::string_view name);

// Support thresholds: the with-R expansion holds for supports inside
// (-1/(n-1), 1/(n-1)); the mock-Gaussian one inside (-(2k-1)/(nk), ...).
double with_r_support_threshold(int n);
double mock_gaussian_support_threshold(int n, int weight_k);

struct MomentRequest {
  std::vector<TestFunction> test_functions;
  SymmetryGroup family = SymmetryGroup::kSOeven;
  int weight_k = 2;
  Regime regime = Regime::kAuto;
};

struct MomentResult {
  double value = 0.0;
  double matching_sum = 0.0;
  double r_term = 0.0;  // 0 in the mock-Gaussian regime
  int sign_applied = 0;
  Regime regime = Regime::kAuto;  // never kAuto after resolution
};

// Resolves kAuto against the supports, or throws kSupportViolation naming
// the threshold the forced regime violates.
Regime resolve_regime(std::span<const TestFunction> tfs, int weight_k,
                      Regime requested);

// Limiting n-th mixed centered moment of the one-level statistics for the
// orthogonal families. SO(even) adds +R, SO(odd) adds -R, the unsplit O
// family (the average of the two) carries no R.
MomentResult centered_moment(const MomentRequest& request,
                             const QuadratureSettings& settings = {});

}  // namespace lowlying

#endif  // LOWLYING_MOMENTS_HPP_
