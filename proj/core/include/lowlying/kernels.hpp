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

#ifndef LOWLYING_KERNELS_HPP_
#define LOWLYING_KERNELS_HPP_

#include <string_view>

#include "lowlying/quadrature.hpp"
#include "lowlying/testfunc.hpp"

namespace lowlying {

enum class SymmetryGroup { kO, kSOeven, kSOodd, kU, kSp };

// CLI spelling: "o", "so-even", "so-odd", "u", "sp".
std::string_view group_name(SymmetryGroup g);
SymmetryGroup parse_group(std::string_view name);

// The epsilon of K_eps for the determinantal groups: +1 for SO(even), -1 for
// SO(odd) and Sp, 0 for U. O is a mixture and has no single sign.
int kernel_sign(SymmetryGroup g);

// K(y) = sin(pi y)/(pi y), K(0) = 1.
double kernel_K(double y);
// K_eps(x, y) = K(x - y) + eps K(x + y).
double kernel_K_eps(int eps, double x, double y);

// One-level density: smooth part plus the weight of a point mass at 0.
struct DensityValue {
  double smooth = 0.0;
  double delta_weight = 0.0;
};

// Two-level density: smooth + delta_x * delta(x) + delta_y * delta(y).
// The point-mass coefficients depend on the other coordinate.
struct DensityValue2 {
  double smooth = 0.0;
  double delta_x = 0.0;
  double delta_y = 0.0;
};

DensityValue density_W1(SymmetryGroup g, double x);
DensityValue2 density_W2(SymmetryGroup g, double x, double y);

// int phi(x) sin(2 pi x)/(2 pi x) dx, computed as (1/2) int_{-1}^{1} phihat.
double sinc_mass(const TestFunction& tf,
                 const QuadratureSettings& settings = {});

// (1/phi(0)) int phi(x) W_1(x) dx, point mass included.
double expectation_1level(const TestFunction& tf, SymmetryGroup g,
                          const QuadratureSettings& settings = {});

// (1/(phi1(0) phi2(0))) int int phi1(x) phi2(y) W_2(x, y) dx dy.
double expectation_2level(const TestFunction& tf1, const TestFunction& tf2,
                          SymmetryGroup g,
                          const QuadratureSettings& settings = {});

double raw_to_centered(double mu, double mu2raw);
double raw_to_centered3(double mu, double mu2raw, double mu3raw);

}  // namespace lowlying

#endif  // LOWLYING_KERNELS_HPP_
