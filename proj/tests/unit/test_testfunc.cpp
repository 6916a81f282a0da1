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


#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "lowlying/error.hpp"
#include "lowlying/testfunc.hpp"
#include "oracles.hpp"

namespace lowlying {
namespace {

constexpr double kPi = std::numbers::pi;

GeneratorSpec sinx2(double half) {
  return {GeneratorKind::kSinOfSquare, {1.0}, half};
}

std::vector<TestFunction> zoo() {
  return {
      make_naive(1.0 / 3.0),
      make_naive(1.0),
      make_from_generator(sinx2(0.125)),
      make_from_generator({GeneratorKind::kCosineSeries, {1.0, 0.5, -0.3}, 0.25}),
      make_from_generator({GeneratorKind::kPolynomial, {1.0, 2.0, -4.0}, 0.2}),
      make_from_generator({GeneratorKind::kTabulated, {0.2, 1.0, 0.7, 1.3, 0.1}, 0.5}),
  };
}

TEST(TestFunction, NaiveClosedForms) {
  const TestFunction tf = make_naive(1.0 / 3.0);
  EXPECT_EQ(tf.variant(), TestFunction::Variant::kNaive);
  EXPECT_DOUBLE_EQ(tf.phi0(), 1.0);
  EXPECT_NEAR(tf.phihat0(), 3.0, 1e-15);
  EXPECT_EQ(tf.phihat(1.0 / 3.0), 0.0);
  EXPECT_DOUBLE_EQ(tf.support_bound(), 1.0 / 3.0);
  EXPECT_NEAR(make_naive(1.0).phihat(0.5), 0.5, 1e-15);
  for (double v : {1.0 / 6.0, 0.25, 1.0 / 3.0, 1.0}) {
    const TestFunction t = make_naive(v);
    EXPECT_NEAR(t.phi(1.0 / (2.0 * v)), 4.0 / (kPi * kPi), 1e-15);
    for (double x : {-3.7, -0.2, 0.05, 1.0, 9.5}) {
      EXPECT_NEAR(t.phi(x), oracle::naive_phi(v, x), 1e-15);
      EXPECT_NEAR(t.phihat(x * v / 4.0), oracle::naive_phihat(v, x * v / 4.0), 1e-13);
    }
  }
}

TEST(TestFunction, RejectsInvalidInput) {
  for (double v : {0.0, -1.0, std::nan("")}) {
    try {
      (void)make_naive(v);
      FAIL() << "v=" << v;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    }
  }
  // An odd generator integrates to zero, so phi(0) = 0.
  try {
    (void)make_from_generator({GeneratorKind::kPolynomial, {0.0, 1.0}, 0.25});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateGenerator);
  }
  EXPECT_THROW((void)make_from_generator(sinx2(-1.0)), Error);
}

// sigma^2 of Naive(v) with itself is 1/3 whatever v is.
TEST(TestFunction, NaiveSigma2IsScaleFree) {
  for (double v : {1.0 / 6.0, 0.25, 1.0 / 3.0, 0.5, 1.0}) {
    const TestFunction t = make_naive(v);
    EXPECT_NEAR(sigma2(t, t), 1.0 / 3.0, 1e-10) << "v=" << v;
  }
}

TEST(TestFunction, MixedSigma2AgainstSimpson) {
  const double v = 0.25, w = 1.0 / 3.0;
  auto f = [&](double y) {
    return 4.0 * y * oracle::naive_phihat(v, y) * oracle::naive_phihat(w, y);
  };
  // The product has a kink at y = v; split there.
  const double ref = oracle::simpson(f, 0.0, v, 20000);
  const TestFunction a = make_naive(v), b = make_naive(w);
  EXPECT_NEAR(sigma2(a, b), ref, 1e-11);
  EXPECT_DOUBLE_EQ(sigma2(a, b), sigma2(b, a));
}

TEST(TestFunction, IndicatorGeneratorIsNaiveOne) {
  const TestFunction g =
      make_from_generator({GeneratorKind::kCosineSeries, {1.0}, 0.5});
  const TestFunction n = make_naive(1.0);
  EXPECT_DOUBLE_EQ(g.support_bound(), 1.0);
  for (double y : {0.0, 0.1, 0.37, 0.5, 0.9, 0.999}) {
    EXPECT_NEAR(g.phihat(y), n.phihat(y), 1e-12) << y;
  }
  for (double x : {0.0, 0.3, 1.5, 7.25}) {
    EXPECT_NEAR(g.phi(x), n.phi(x), 1e-12) << x;
  }
}

TEST(TestFunction, SinOfSquareFunctionals) {
  const TestFunction tf = make_from_generator(sinx2(0.125));
  auto g = [](double t) { return std::sin(t * t); };
  auto g2 = [](double t) { return std::sin(t * t) * std::sin(t * t); };
  const double mass = oracle::simpson(g, -0.125, 0.125, 2000);
  const double energy = oracle::simpson(g2, -0.125, 0.125, 2000);
  EXPECT_NEAR(tf.phi0() / (mass * mass), 1.0, 1e-10);
  EXPECT_NEAR(tf.phi0(), 1.7e-6, 0.05e-6);
  EXPECT_NEAR(tf.phihat0() / energy, 1.0, 1e-10);
  EXPECT_NEAR(tf.phihat0() / tf.phi0() + 0.5, 7.69993, 1e-4);
  EXPECT_DOUBLE_EQ(tf.support_bound(), 0.25);
}

TEST(TestFunction, MinRank) {
  EXPECT_EQ(min_rank(make_naive(1.0 / 3.0)), 4);
  EXPECT_EQ(min_rank(make_naive(0.25)), 5);
  EXPECT_EQ(min_rank(make_from_generator(sinx2(0.125))), 8);
  // Ratio exactly an integer: strict inequality pushes past it.
  EXPECT_EQ(min_rank(make_naive(2.0 / 3.0)), 3);
}

TEST(TestFunction, EvenAndNonNegativeOnGrid) {
  for (const TestFunction& tf : zoo()) {
    const double scale = tf.phi0();
    for (int i = 0; i < 10000; ++i) {
      const double x = -100.0 + 200.0 * i / 9999.0;
      const double p = tf.phi(x);
      ASSERT_GE(p, -1e-12 * scale) << tf.label() << " x=" << x;
      ASSERT_NEAR(p, tf.phi(-x), 1e-14 * scale) << tf.label();
    }
    for (double y : {0.01, 0.1, 0.2, 0.3}) {
      EXPECT_NEAR(tf.phihat(y), tf.phihat(-y), 1e-14 * tf.phihat0()) << tf.label();
    }
  }
}

TEST(TestFunction, TransformVanishesOutsideSupport) {
  for (const TestFunction& tf : zoo()) {
    const double s = tf.support_bound();
    for (double y : {s, s * (1 + 1e-15), s + 1e-9, 2 * s, 100.0}) {
      EXPECT_EQ(tf.phihat(y), 0.0) << tf.label();
      EXPECT_EQ(tf.phihat(-y), 0.0) << tf.label();
    }
  }
}

// phi(x) computed two ways: |g^(x)|^2 directly from the generator, and the
// cosine transform of the library's phihat.
TEST(TestFunction, FourierConsistency) {
  const std::vector<GeneratorSpec> specs{
      sinx2(0.125),
      {GeneratorKind::kCosineSeries, {1.0, 0.5, -0.3}, 0.25},
      {GeneratorKind::kPolynomial, {1.0, 2.0, -4.0}, 0.2},
  };
  for (const GeneratorSpec& spec : specs) {
    const TestFunction tf = make_from_generator(spec);
    const double h = spec.half_support;
    // The spec vanishes on the closed boundary; sample just inside it so
    // Simpson sees the continuous extension.
    auto g = [&](double t) { return spec(std::clamp(t, -h * (1 - 1e-14), h * (1 - 1e-14))); };
    for (double x : {0.0, 0.4, 1.3, 3.0, 11.0}) {
      auto re = [&](double t) { return g(t) * std::cos(2 * kPi * x * t); };
      auto im = [&](double t) { return g(t) * std::sin(2 * kPi * x * t); };
      const double a = oracle::simpson(re, -h, h, 4000);
      const double b = oracle::simpson(im, -h, h, 4000);
      const double direct = a * a + b * b;
      auto inv = [&](double y) { return tf.phihat(y) * std::cos(2 * kPi * x * y); };
      const double inverted = 2.0 * oracle::simpson(inv, 0.0, 2.0 * h, 8000);
      EXPECT_NEAR(tf.phi(x), direct, 1e-8 * tf.phi0()) << spec.label() << " x=" << x;
      EXPECT_NEAR(tf.phi(x), inverted, 1e-8 * tf.phi0()) << spec.label() << " x=" << x;
    }
  }
}

TEST(TestFunction, ScalingIsLinear) {
  const TestFunction tf = make_from_generator(sinx2(0.125));
  const TestFunction s = tf.scaled(3.5);
  EXPECT_DOUBLE_EQ(s.amplitude(), 3.5 * tf.amplitude());
  EXPECT_NEAR(s.phi(0.7), 3.5 * tf.phi(0.7), 1e-15);
  EXPECT_NEAR(s.phihat(0.1), 3.5 * tf.phihat(0.1), 1e-15);
  EXPECT_EQ(min_rank(s), min_rank(tf));
  EXPECT_NEAR(sigma2(s, s), 3.5 * 3.5 * sigma2(tf, tf), 1e-12 * sigma2(s, s));
}

TEST(TestFunction, DecayEnvelopeBoundsPhi) {
  for (const TestFunction& tf : zoo()) {
    const PowerLawDecay env = tf.decay_envelope();
    for (int i = 0; i < 4000; ++i) {
      const double x = 0.5 + i * 0.05;
      ASSERT_LE(tf.phi(x), env(x) * (1 + 1e-12)) << tf.label() << " x=" << x;
    }
  }
}

TEST(TestFunction, OneLevelMeanAndLabels) {
  const TestFunction tf = make_naive(0.25);
  EXPECT_NEAR(one_level_mean(tf), 4.5, 1e-14);
  EXPECT_EQ(make_naive(1.0 / 3.0).tabulation_nodes(), 0u);
  EXPECT_FALSE(tf.label().empty());
}

}  // namespace
}  // namespace lowlying
