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

#ifndef LOWLYING_RMT_HPP_
#define LOWLYING_RMT_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lowlying/kernels.hpp"
#include "lowlying/moments.hpp"
#include "lowlying/testfunc.hpp"

namespace lowlying {

// so-even -> SO(2N), so-odd -> SO(2N+1), u -> U(N).
struct EnsembleSpec {
  SymmetryGroup group = SymmetryGroup::kSOeven;
  int half_dim = 1;
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  // Optional permutation p of {0..dim-1}; every draw Q is replaced by
  // P Q P^T with P e_i = e_{p(i)}. Leaves the Haar law unchanged.
  std::vector<int> conjugation;

  void validate() const;
  int total_dim() const;
};

struct HaarDraw {
  std::vector<double> angles;  // sorted, in (-pi, pi]
  double determinant_re = 0.0;
  double determinant_im = 0.0;
  double max_modulus_error = 0.0;  // max | |lambda| - 1 |
};

// Gaussian matrix, QR with positive diagonal of R, and for the special
// orthogonal groups a column flip when det = -1. Eigenangles from a dense
// eigendecomposition; a draw whose eigenvalues leave the unit circle by
// more than 1e-8 is discarded and resampled.
HaarDraw sample_haar(SymmetryGroup group, int half_dim, std::mt19937_64& rng,
                     std::span<const int> conjugation = {});

// Same matrix law, but returns |theta_j| for every eigenvalue via the
// symmetric (Hermitian) part, whose eigenvalues are cos theta_j. Suffices
// for even test functions and is about three times cheaper.
std::vector<double> sample_abs_angles(SymmetryGroup group, int half_dim,
                                      std::mt19937_64& rng,
                                      std::span<const int> conjugation = {});

// sum_j phi(theta_j * total_dim / (2 pi)).
double linear_statistic(std::span<const double> angles, const TestFunction& tf,
                        int total_dim);

struct EmpiricalMoments {
  double mean = 0.0;
  double mean_std_error = 0.0;
  std::vector<double> centered;    // orders 2..n_max
  std::vector<double> std_errors;  // same orders; empty when samples < 2
  std::uint64_t sample_count = 0;
  int n_max = 0;

  double centered_at(int order) const;
  double std_error_at(int order) const;
};

// Sample s is drawn from substream (seed, s), so results are bitwise
// identical for any worker count. Standard errors come from floor(sqrt(S))
// batch means.
EmpiricalMoments empirical_moments(const EnsembleSpec& spec,
                                   const TestFunction& tf, int n_max);

// Moments of an already sampled statistic vector; same batching rule.
EmpiricalMoments moments_from_samples(std::span<const double> values,
                                      int n_max);

// Statistic values for every sample of the spec, in sample order.
std::vector<double> sample_statistics(const EnsembleSpec& spec,
                                      const TestFunction& tf);

struct PredictedMoments {
  double mean = 0.0;
  std::vector<double> centered;  // orders 2..n_max
  double centered_at(int order) const;
};

// Limiting predictions: mean phihat(0) + phi(0)/2 for the orthogonal
// groups and phihat(0) for U; centered moments from the moments module
// (with_R) for the orthogonal groups and Gaussian moments with variance
// sigma2/2 for U.
PredictedMoments predicted_moments(SymmetryGroup group, const TestFunction& tf,
                                   int n_max,
                                   const QuadratureSettings& settings = {});

// One row of a verification run.
struct MomentCheck {
  int order = 0;
  double empirical = 0.0;
  double predicted = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;
  double allowance = 0.0;  // 3 std_error + C / N
  bool pass = false;
};

// |empirical - predicted| <= 3 std_error + finite_size_c / N per order.
std::vector<MomentCheck> compare_moments(const EmpiricalMoments& emp,
                                         const PredictedMoments& pred,
                                         std::span<const int> orders,
                                         std::span<const double> finite_size_c,
                                         int half_dim);

}  // namespace lowlying

#endif  // LOWLYING_RMT_HPP_
