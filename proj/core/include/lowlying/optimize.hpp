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

#ifndef LOWLYING_OPTIMIZE_HPP_
#define LOWLYING_OPTIMIZE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lowlying/kernels.hpp"
#include "lowlying/moments.hpp"
#include "lowlying/quadrature.hpp"
#include "lowlying/testfunc.hpp"

namespace lowlying {

enum class BasisKind { kCosineSeries, kPolynomial, kSinOfSquare, kFixed };

std::string_view basis_kind_name(BasisKind k);

// Parameterizes one slot. For generator kinds the coefficient vector maps
// to a GeneratorSpec on (-half_support, half_support); for kFixed the slot
// holds a prebuilt test function and has no coefficients.
struct GeneratorBasis {
  BasisKind kind = BasisKind::kCosineSeries;
  int dimension = 0;
  std::vector<double> lower;
  std::vector<double> upper;
  double half_support = 0.0;
  std::optional<TestFunction> fixed;
  std::vector<double> initial;  // empty: kind-specific default

  void validate() const;
  std::vector<double> start_point() const;
  GeneratorSpec spec(std::span<const double> coeffs) const;
  TestFunction build(std::span<const double> coeffs,
                     const QuadratureSettings& settings = {}) const;
  double support() const;
  std::string label() const;
};

GeneratorBasis cosine_basis(int dimension, double half_support,
                            double lo = -1.0, double hi = 1.0);
GeneratorBasis polynomial_basis(int dimension, double half_support,
                                double lo = -1.0, double hi = 1.0);
// sin(a t^2) with a in [lo, hi].
GeneratorBasis sinx2_basis(double half_support, double lo = 0.25,
                           double hi = 4.0);
GeneratorBasis fixed_basis(const TestFunction& tf);

struct OptimizationProblem {
  SymmetryGroup family = SymmetryGroup::kSOeven;
  int rank = 0;
  int moment_order = 4;
  std::vector<GeneratorBasis> slots;  // moment_order / 2 entries
  double support_budget = 0.0;
  int weight_k = 2;
  Regime regime = Regime::kAuto;

  // Checks slot count, support budget against the regime hypothesis and
  // each slot's support against the budget.
  void validate() const;
  int dimension() const;
  // Splits a concatenated coefficient vector into per-slot views.
  std::vector<std::vector<double>> split(std::span<const double> x) const;
};

inline constexpr double kPenaltyScale = 1e6;

struct ObjectiveValue {
  double value = 0.0;
  bool feasible = false;
  double violation = 0.0;
};

// Moment bound at x, or kPenaltyScale * (1 + violation) when some slot has
// rank <= c_phi or cannot be built.
ObjectiveValue objective(std::span<const double> x,
                         const OptimizationProblem& problem,
                         const QuadratureSettings& settings = {});

struct SearchSettings {
  int restarts = 16;
  std::uint64_t seed = 0;
  int max_evals = 2000;
  double simplex_tolerance = 1e-12;  // relative spread of simplex values
  unsigned workers = 0;
  QuadratureSettings quadrature;
};

struct RestartTrace {
  int restart = 0;
  std::vector<double> start;
  double start_value = 0.0;
  bool start_feasible = false;
  std::vector<double> best;
  double best_value = 0.0;
  bool best_feasible = false;
  int evaluations = 0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // best value after each iteration
};

struct SearchResult {
  std::vector<std::vector<double>> coefficients;  // per slot
  double best_bound = 0.0;
  int best_restart = 0;
  std::vector<std::string> test_functions;
  std::vector<RestartTrace> trace;
};

// Box-clamped Nelder-Mead with restarts. Restart 0 starts at the slots'
// start points, restart i > 0 at a uniform draw from a stream seeded by
// (seed, i). Throws kInfeasible if no restart reaches a feasible point.
SearchResult search(const OptimizationProblem& problem,
                    const SearchSettings& settings = {});

}  // namespace lowlying

#endif  // LOWLYING_OPTIMIZE_HPP_
