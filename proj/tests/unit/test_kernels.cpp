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


#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "lowlying/kernels.hpp"
#include "lowlying/testfunc.hpp"
#include "oracles.hpp"

namespace lowlying {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr SymmetryGroup kAll[] = {SymmetryGroup::kO, SymmetryGroup::kSOeven,
                                  SymmetryGroup::kSOodd, SymmetryGroup::kU,
                                  SymmetryGroup::kSp};

TEST(Kernels, SincKernel) {
  EXPECT_EQ(kernel_K(0.0), 1.0);
  EXPECT_NEAR(kernel_K(1.0), 0.0, 1e-16);
  EXPECT_NEAR(kernel_K(0.5), 2.0 / kPi, 1e-15);
  for (double x : {0.0, 0.1, 0.75, 3.2}) {
    EXPECT_NEAR(kernel_K_eps(1, x, x), 1.0 + oracle::sinc_pi(2.0 * x), 1e-15);
    EXPECT_NEAR(kernel_K_eps(-1, x, x), 1.0 - oracle::sinc_pi(2.0 * x), 1e-15);
    EXPECT_EQ(kernel_K_eps(0, x, 0.3), kernel_K(x - 0.3));
  }
}

TEST(Kernels, GroupNamesRoundTrip) {
  for (SymmetryGroup g : kAll) EXPECT_EQ(parse_group(group_name(g)), g);
  EXPECT_EQ(kernel_sign(SymmetryGroup::kSOeven), 1);
  EXPECT_EQ(kernel_sign(SymmetryGroup::kSOodd), -1);
  EXPECT_EQ(kernel_sign(SymmetryGroup::kSp), -1);
  EXPECT_EQ(kernel_sign(SymmetryGroup::kU), 0);
}

TEST(Kernels, OneLevelDensities) {
  EXPECT_DOUBLE_EQ(density_W1(SymmetryGroup::kSOeven, 0.0).smooth, 2.0);
  EXPECT_DOUBLE_EQ(density_W1(SymmetryGroup::kU, 0.37).smooth, 1.0);
  const DensityValue o = density_W1(SymmetryGroup::kO, 0.0);
  EXPECT_DOUBLE_EQ(o.smooth, 1.0);
  EXPECT_DOUBLE_EQ(o.delta_weight, 0.5);
  EXPECT_DOUBLE_EQ(density_W1(SymmetryGroup::kSOodd, 0.2).delta_weight, 1.0);
  for (SymmetryGroup g : {SymmetryGroup::kSOeven, SymmetryGroup::kU, SymmetryGroup::kSp}) {
    EXPECT_EQ(density_W1(g, 0.2).delta_weight, 0.0);
  }
  for (SymmetryGroup g : kAll) {
    for (double x : {0.05, 0.5, 1.7, 12.3}) {
      EXPECT_EQ(density_W1(g, x).smooth, density_W1(g, -x).smooth);
    }
  }
}

// The orthogonal and symplectic kernels are even in each argument; the
// unitary one depends on x - y only, so it is even under the joint flip.
TEST(Kernels, TwoLevelDiagonalAndEvenness) {
  for (SymmetryGroup g : kAll) {
    for (double x : {0.0, 0.2, 1.1, 4.4}) {
      EXPECT_NEAR(density_W2(g, x, x).smooth, 0.0, 1e-15);
      for (double y : {0.3, 2.5}) {
        const double w = density_W2(g, x, y).smooth;
        EXPECT_NEAR(w, density_W2(g, -x, -y).smooth, 1e-15);
        EXPECT_NEAR(w, density_W2(g, y, x).smooth, 1e-15);
        if (g == SymmetryGroup::kU) continue;
        EXPECT_NEAR(w, density_W2(g, -x, y).smooth, 1e-15) << group_name(g);
        EXPECT_NEAR(w, density_W2(g, x, -y).smooth, 1e-15) << group_name(g);
      }
    }
  }
}

TEST(Kernels, RawToCentered) {
  EXPECT_EQ(raw_to_centered(0.0, 2.5), 2.5);
  EXPECT_EQ(raw_to_centered(1.0, 1.0), 0.0);
  EXPECT_EQ(raw_to_centered3(2.0, 5.0, 14.0), 0.0);
  EXPECT_EQ(raw_to_centered3(0.0, 5.0, 14.0), 14.0);
}

TEST(Kernels, NaiveOneLevelExpectations) {
  const TestFunction tf = make_naive(1.0);
  EXPECT_NEAR(expectation_1level(tf, SymmetryGroup::kSOeven), 1.5, 1e-12);
  EXPECT_NEAR(expectation_1level(tf, SymmetryGroup::kSOodd), 1.5, 1e-12);
  EXPECT_NEAR(expectation_1level(tf, SymmetryGroup::kU), 1.0, 1e-12);
}

TEST(Kernels, OAverageIsExact) {
  for (double v : {0.25, 1.0, 1.6}) {
    const TestFunction tf = make_naive(v);
    const double e = expectation_1level(tf, SymmetryGroup::kSOeven);
    const double o = expectation_1level(tf, SymmetryGroup::kSOodd);
    EXPECT_NEAR(expectation_1level(tf, SymmetryGroup::kO), 0.5 * (e + o), 1e-12);
  }
}

TEST(Kernels, SupportInsideUnitGivesCommonMean) {
  const std::vector<TestFunction> tfs{
      make_naive(1.0 / 3.0), make_naive(0.9),
      make_from_generator({GeneratorKind::kSinOfSquare, {1.0}, 0.125}),
      make_from_generator({GeneratorKind::kCosineSeries, {1.0, 0.4}, 0.45})};
  for (const TestFunction& tf : tfs) {
    const double ref = (tf.phihat0() + 0.5 * tf.phi0()) / tf.phi0();
    const double tol = 1e-9 * ref;
    EXPECT_NEAR(expectation_1level(tf, SymmetryGroup::kSOeven), ref, tol) << tf.label();
    EXPECT_NEAR(expectation_1level(tf, SymmetryGroup::kSOodd), ref, tol) << tf.label();
  }
}

// Past support 1 the transform identity truncates at |y| = 1; compare with
// a direct x-space Riemann sum of phi against the density.
TEST(Kernels, OneLevelDirectQuadrature) {
  const double v = 2.0;
  const TestFunction tf = make_naive(v);
  auto w = [&](double x) { return oracle::naive_phi(v, x) * oracle::sinc_pi(2 * x); };
  auto p = [&](double x) { return oracle::naive_phi(v, x); };
  const double L = 200.0;
  const double sinc_part = 2.0 * oracle::midpoint(w, 0.0, L, 20'000'000);
  // phi averages 1/(2 pi^2 v^2 x^2) past L; add that tail analytically.
  const double mass = 2.0 * oracle::midpoint(p, 0.0, L, 20'000'000) +
                      1.0 / (kPi * kPi * v * v * L);
  EXPECT_NEAR(sinc_part, 0.375, 1e-6);
  EXPECT_NEAR(expectation_1level(tf, SymmetryGroup::kSOeven), mass + sinc_part, 2e-6);
  EXPECT_NEAR(expectation_1level(tf, SymmetryGroup::kSp), mass - sinc_part, 2e-6);
}

// Brute 2-D midpoint grid over [-L, L]^2 with a raised-cosine generator,
// whose phi decays like |x|^-6 so truncation is negligible.
double brute_two_level(const TestFunction& a, const TestFunction& b,
                       SymmetryGroup g) {
  const double L = 30.0;
  const int n = 3000;
  const double h = 2 * L / n;
  std::vector<double> xs(n), pa(n), pb(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = -L + (i + 0.5) * h;
    pa[i] = a.phi(xs[i]);
    pb[i] = b.phi(xs[i]);
  }
  double smooth = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += pb[j] * density_W2(g, xs[i], xs[j]).smooth;
    smooth += pa[i] * row;
  }
  smooth *= h * h;
  double delta = 0.0;
  if (g == SymmetryGroup::kSOodd) {
    for (int i = 0; i < n; ++i) {
      delta += a.phi0() * pb[i] * kernel_K_eps(-1, xs[i], xs[i]) +
               b.phi0() * pa[i] * kernel_K_eps(-1, xs[i], xs[i]);
    }
    delta *= h;
  }
  return (smooth + delta) / (a.phi0() * b.phi0());
}

TEST(Kernels, TwoLevelAgainstBruteGrid) {
  const TestFunction a =
      make_from_generator({GeneratorKind::kCosineSeries, {1.0, 1.0}, 0.5});
  const TestFunction b =
      make_from_generator({GeneratorKind::kCosineSeries, {1.0, 1.0}, 0.3});
  for (SymmetryGroup g : {SymmetryGroup::kU, SymmetryGroup::kSOeven,
                          SymmetryGroup::kSOodd}) {
    const double ref = brute_two_level(a, b, g);
    EXPECT_NEAR(expectation_2level(a, b, g), ref, 1e-6 * std::abs(ref))
        << group_name(g);
  }
  // Sanity floor for U: repulsion only removes mass.
  const double u = expectation_2level(a, b, SymmetryGroup::kU);
  EXPECT_LE(u, a.phihat0() * b.phihat0() / (a.phi0() * b.phi0()) + 1e-9);
}

}  // namespace
}  // namespace lowlying
