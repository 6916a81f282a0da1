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

#include "lowlying/error.hpp"
#include "lowlying/quadrature.hpp"
#include "oracles.hpp"

namespace lowlying {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Quadrature, SmoothIntegrals) {
  auto s = [](double x) { return std::sin(x); };
  EXPECT_NEAR(integrate(s, 0.0, kPi).value, 2.0, 1e-13);
  auto g = [](double x) { return std::exp(-x * x); };
  EXPECT_NEAR(integrate(g, -8.0, 8.0).value, std::sqrt(kPi), 1e-12);
}

TEST(Quadrature, BreakpointsPutKinksOnPanelEdges) {
  auto f = [](double x) { return std::abs(x); };
  const std::vector<double> cuts{-1.0, 0.0, 2.0};
  const auto r = integrate(f, cuts);
  EXPECT_NEAR(r.value, 2.5, 1e-14);
  EXPECT_LE(r.error, 1e-12);
}

TEST(Quadrature, ReportedErrorCoversTrueError) {
  auto f = [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
  const auto r = integrate(f, -1.0, 1.0);
  const double exact = 0.4 * std::atan(5.0);
  EXPECT_LE(std::abs(r.value - exact), std::max(r.error, 1e-15));
}

TEST(Quadrature, LinearityWithinTenAbsTol) {
  QuadratureSettings qs;
  auto f = [](double x) { return std::cos(3.0 * x) * std::exp(-x); };
  auto g = [](double x) { return x * x * std::sin(x); };
  const double a = 2.5, b = -0.75;
  auto h = [&](double x) { return a * f(x) + b * g(x); };
  const double lhs = integrate(h, 0.0, 4.0, qs).value;
  const double rhs = a * integrate(f, 0.0, 4.0, qs).value +
                     b * integrate(g, 0.0, 4.0, qs).value;
  EXPECT_NEAR(lhs, rhs, 10.0 * qs.abs_tol);
}

TEST(Quadrature, EvenSymmetry) {
  auto f = [](double x) { return std::cos(x) / (1.0 + x * x); };
  const double full = integrate(f, -3.0, 3.0).value;
  const double half = integrate(f, 0.0, 3.0).value;
  EXPECT_NEAR(full, 2.0 * half, 1e-12);
}

TEST(Quadrature, TighterToleranceNeverReportsLargerError) {
  auto f = [](double x) { return std::sqrt(std::abs(std::sin(7.0 * x))); };
  QuadratureSettings qs;
  qs.rel_tol = 1e-14;
  qs.max_subdivisions = 20000;
  double prev = INFINITY;
  for (double tol = 1e-4; tol >= 1e-10; tol /= 2.0) {
    qs.abs_tol = tol;
    const auto r = integrate(f, 0.0, 2.0, qs);
    EXPECT_LE(r.error, prev) << "abs_tol " << tol;
    prev = r.error;
  }
}

TEST(Quadrature, ExhaustedBudgetCarriesBestEstimate) {
  QuadratureSettings qs;
  qs.max_subdivisions = 3;
  qs.abs_tol = 1e-15;
  qs.rel_tol = 1e-15;
  auto f = [](double x) { return 1.0 / std::sqrt(x); };
  try {
    (void)integrate(f, 0.0, 1.0, qs);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonConvergence);
    EXPECT_NEAR(e.best_estimate(), 2.0, 0.1);
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(Quadrature, SettingsValidation) {
  QuadratureSettings qs;
  qs.abs_tol = -1.0;
  EXPECT_THROW(qs.validate(), Error);
  qs = {};
  qs.max_subdivisions = 0;
  EXPECT_THROW(qs.validate(), Error);
  EXPECT_NO_THROW(QuadratureSettings{}.validate());
}

TEST(Quadrature, SincWeight) {
  EXPECT_EQ(sinc2pi(0.0), 1.0);
  EXPECT_NEAR(sinc2pi(0.5), 0.0, 1e-16);
  EXPECT_NEAR(sinc2pi(0.25), 2.0 / kPi, 1e-15);
}

// int sinc^2(v x) sin(2 pi x)/(2 pi x) dx, checked against a brute Riemann
// sum (step 1e-5 over |x| <= 200) and against the transform-side value
// (1/2) int_{-1}^{1} phihat = 1/2 for v <= 1.
TEST(Quadrature, SincWeightedMatchesRiemannSum) {
  for (double v : {1.0 / 3.0, 1.0}) {
    auto f = [v](double x) { return oracle::naive_phi(v, x); };
    const PowerLawDecay env{1.0 / (kPi * kPi * v * v), 2.0};
    // An |x|^-2 envelope needs |x| ~ 1e6 to certify 1e-12; 1e-9 is enough.
    QuadratureSettings qs;
    qs.abs_tol = 1e-9;
    const auto r = integrate_sinc_weighted(f, env, qs);
    auto w = [&](double x) { return f(x) * oracle::sinc_pi(2.0 * x); };
    const double brute = 2.0 * oracle::midpoint(w, 0.0, 200.0, 20'000'000);
    EXPECT_NEAR(r.value, brute, 2e-6) << "v=" << v;
    EXPECT_NEAR(r.value, 0.5, r.error + 1e-12) << "v=" << v;
    EXPECT_LE(r.error, 1e-9);
  }
}

TEST(Quadrature, TailBoundDominatesActualTail) {
  const PowerLawDecay env{1.0, 2.0};
  for (double x0 : {0.5, 2.0, 10.0}) {
    auto f = [](double x) { return std::pow(x, -2.0) * oracle::sinc_pi(2.0 * x); };
    const double tail = std::abs(oracle::midpoint(f, x0, 2000.0, 4'000'000));
    EXPECT_GE(env.sinc_weighted_tail(x0), tail) << "X=" << x0;
  }
  EXPECT_DOUBLE_EQ(env(2.0), 0.25);
}

TEST(Quadrature, TwoDimensional) {
  auto xy = [](double x, double y) { return x * y; };
  EXPECT_NEAR(integrate_2d(xy, Rectangle{0, 1, 0, 1}).value, 0.25, 1e-14);
  auto gauss = [](double x, double y) { return std::exp(-(x * x + y * y)); };
  EXPECT_NEAR(integrate_2d(gauss, Rectangle{-7, 7, -7, 7}).value, kPi, 1e-11);
}

}  // namespace
}  // namespace lowlying
