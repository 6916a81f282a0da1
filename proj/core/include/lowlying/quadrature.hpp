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

#ifndef LOWLYING_QUADRATURE_HPP_
#define LOWLYING_QUADRATURE_HPP_

#include <span>

#include "lowlying/function_ref.hpp"

namespace lowlying {

// How far an infinite domain may be truncated. The cut is placed where the
// certified tail bound falls below `fraction_of_abs_tol * abs_tol`.
struct TailPolicy {
  double fraction_of_abs_tol = 0.1;
  double max_extent = 1.0e6;
};

struct QuadratureSettings {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  TailPolicy tail;

  // Throws Error(kInvalidArgument) if any field is out of range.
  void validate() const;

  // Target error for a result of magnitude |value|.
  double target(double value) const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

using Integrand = FunctionRef<double(double)>;
using Integrand2d = FunctionRef<double(double, double)>;

// Globally adaptive 21-point Gauss-Kronrod integration over [a, b]. Throws
// QuadratureError with the best estimate if the tolerance cannot be met
// within `max_subdivisions` bisections.
QuadratureResult integrate(Integrand f, double a, double b,
                           const QuadratureSettings& settings = {});

// Same, with the domain pre-split at `breakpoints` (sorted, including both
// endpoints). Use this to put kinks of the integrand on panel boundaries.
QuadratureResult integrate(Integrand f, std::span<const double> breakpoints,
                           const QuadratureSettings& settings = {});

// Envelope |F(x)| <= coefficient * |x|^(-exponent), valid for |x| >= 1/2.
struct PowerLawDecay {
  double coefficient = 1.0;
  double exponent = 2.0;

  double operator()(double x) const;

  // Bound on |int_X^inf F(x) sin(2 pi x)/(2 pi x) dx| for X >= 1/2.
  double sinc_weighted_tail(double x) const;
};

// sin(2 pi x) / (2 pi x), equal to 1 at the origin.
double sinc2pi(double x);

// int_R F(x) sin(2 pi x)/(2 pi x) dx for even F. Panels are aligned with the
// zeros of the weight (the half-integers) and the domain is cut where the
// decay envelope certifies the remaining tail is below the tail budget. The
// reported error includes that tail bound.
QuadratureResult integrate_sinc_weighted(Integrand even_f,
                                         const PowerLawDecay& decay,
                                         const QuadratureSettings& settings = {});

struct Rectangle {
  double x_lo = 0.0;
  double x_hi = 1.0;
  double y_lo = 0.0;
  double y_hi = 1.0;
};

// Iterated adaptive integration over a rectangle: outer in x, inner in y.
QuadratureResult integrate_2d(Integrand2d f, const Rectangle& box,
                              const QuadratureSettings& settings = {});

}  // namespace lowlying

#endif  // LOWLYING_QUADRATURE_HPP_
