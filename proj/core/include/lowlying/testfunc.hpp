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

#ifndef LOWLYING_TESTFUNC_HPP_
#define LOWLYING_TESTFUNC_HPP_

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "lowlying/quadrature.hpp"

namespace lowlying {

enum class GeneratorKind {
  kSinOfSquare,   // sin(a t^2), a = coefficients[0] (default 1)
  kPolynomial,    // sum_k c_k t^k
  kCosineSeries,  // sum_k c_k cos(k pi t / H)
  kTabulated,     // piecewise linear through samples on a uniform grid
};

// A real generator g supported on (-H, H). The test function it generates
// has phihat = g * g~ (autocorrelation) and phi = |g^|^2, so phi is even and
// non-negative for any real g; evenness and positivity of g are not needed.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kCosineSeries;
  std::vector<double> coefficients;
  double half_support = 0.5;

  // g(t); zero outside the open support.
  double operator()(double t) const;

  void validate() const;
  std::string label() const;
};

// An admissible pair (phi, phihat): phi even and non-negative with phi(0) > 0,
// phihat even and vanishing for |y| >= support_bound(). Immutable; copies
// share the underlying model and any cached tabulation.
class TestFunction {
 public:
  enum class Variant { kNaive, kGenerator };

  // phi(x) = (sin(pi v x)/(pi v x))^2, phihat(y) = (1 - |y|/v)/v on |y| < v.
  static TestFunction naive(double v);

  static TestFunction from_generator(const GeneratorSpec& g,
                                     const QuadratureSettings& settings = {});

  Variant variant() const;
  // Throws unless variant() == kNaive.
  double naive_width() const;
  // Throws unless variant() == kGenerator.
  const GeneratorSpec& generator() const;

  double phi(double x) const;
  double phihat(double y) const;
  double phi0() const;
  double phihat0() const;
  double support_bound() const;

  // c * phi, c * phihat. Used to check homogeneity of the bounds.
  TestFunction scaled(double c) const;
  double amplitude() const { return scale_; }

  // |phi(x)| <= envelope(x) for |x| >= 1/2.
  PowerLawDecay decay_envelope() const;

  // Number of phihat nodes held in memory; 0 when phihat has a closed form.
  std::size_t tabulation_nodes() const;

  std::string label() const;

  struct Model;

 private:
  TestFunction(std::shared_ptr<const Model> model, double scale)
      : model_(std::move(model)), scale_(scale) {}

  std::shared_ptr<const Model> model_;
  double scale_ = 1.0;
};

TestFunction make_naive(double v);
TestFunction make_from_generator(const GeneratorSpec& g,
                                 const QuadratureSettings& settings = {});

inline double eval_phi(const TestFunction& tf, double x) { return tf.phi(x); }
inline double eval_phihat(const TestFunction& tf, double y) {
  return tf.phihat(y);
}

// Pairwise variance 2 int |y| phihat_a(y) phihat_b(y) dy.
double sigma2(const TestFunction& a, const TestFunction& b,
              const QuadratureSettings& settings = {});

// phihat(0) + phi(0)/2: the mean of the one-level statistic for the
// orthogonal families when the support lies inside (-1, 1).
double one_level_mean(const TestFunction& tf);

// Smallest integer c with c > phihat(0)/phi(0) + 1/2.
int min_rank(const TestFunction& tf);

}  // namespace lowlying

#endif  // LOWLYING_TESTFUNC_HPP_
