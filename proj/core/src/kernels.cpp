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

#include "lowlying/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lowlying/error.hpp"

namespace lowlying {

std::string_view group_name(SymmetryGroup g) {
  switch (g) {
    case SymmetryGroup::kO: return "o";
    case SymmetryGroup::kSOeven: return "so-even";
    case SymmetryGroup::kSOodd: return "so-odd";
    case SymmetryGroup::kU: return "u";
    case SymmetryGroup::kSp: return "sp";
  }
  return "?";
}

SymmetryGroup parse_group(std::string_view name) {
  if (name == "o") return SymmetryGroup::kO;
  if (name == "so-even") return SymmetryGroup::kSOeven;
  if (name == "so-odd") return SymmetryGroup::kSOodd;
  if (name == "u") return SymmetryGroup::kU;
  if (name == "sp") return SymmetryGroup::kSp;
  throw Error(ErrorCode::kParse,
              "unknown family '" + std::string(name) +
                  "' (expected so-even, so-odd, o, u or sp)");
}

int kernel_sign(SymmetryGroup g) {
  switch (g) {
    case SymmetryGroup::kSOeven: return 1;
    case SymmetryGroup::kSOodd:
    case SymmetryGroup::kSp: return -1;
    case SymmetryGroup::kU: return 0;
    case SymmetryGroup::kO: break;
  }
  throw Error(ErrorCode::kUnsupportedFamily,
              "O is a mixture of SO(even) and SO(odd) and has no kernel sign");
}

double kernel_K(double y) {
  const double t = std::numbers::pi * y;
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(t) / t;
}

double kernel_K_eps(int eps, double x, double y) {
  return kernel_K(x - y) + eps * kernel_K(x + y);
}

DensityValue density_W1(SymmetryGroup g, double x) {
  if (g == SymmetryGroup::kO) {
    const DensityValue even = density_W1(SymmetryGroup::kSOeven, x);
    const DensityValue odd = density_W1(SymmetryGroup::kSOodd, x);
    return {0.5 * (even.smooth + odd.smooth),
            0.5 * (even.delta_weight + odd.delta_weight)};
  }
  const int eps = kernel_sign(g);
  const double delta = g == SymmetryGroup::kSOodd ? 1.0 : 0.0;
  return {kernel_K_eps(eps, x, x), delta};
}

DensityValue2 density_W2(SymmetryGroup g, double x, double y) {
  if (g == SymmetryGroup::kO) {
    const DensityValue2 even = density_W2(SymmetryGroup::kSOeven, x, y);
    const DensityValue2 odd = density_W2(SymmetryGroup::kSOodd, x, y);
    return {0.5 * (even.smooth + odd.smooth), 0.5 * (even.delta_x + odd.delta_x),
            0.5 * (even.delta_y + odd.delta_y)};
  }
  const int eps = kernel_sign(g);
  const double kxx = kernel_K_eps(eps, x, x);
  const double kyy = kernel_K_eps(eps, y, y);
  const double kxy = kernel_K_eps(eps, x, y);
  DensityValue2 w{kxx * kyy - kxy * kxy, 0.0, 0.0};
  if (g == SymmetryGroup::kSOodd) {
    // Minors with row/column k removed; for n = 2 these are 1x1.
    w.delta_x = kyy;
    w.delta_y = kxx;
  }
  return w;
}

double sinc_mass(const TestFunction& tf, const QuadratureSettings& settings) {
  const double top = std::min(1.0, tf.support_bound());
  const double norm = tf.phihat0();
  auto integrand = [&](double y) { return tf.phihat(y) / norm; };
  return norm * integrate(integrand, 0.0, top, settings).value;
}

double expectation_1level(const TestFunction& tf, SymmetryGroup g,
                          const QuadratureSettings& settings) {
  if (g == SymmetryGroup::kO) {
    return 0.5 * (expectation_1level(tf, SymmetryGroup::kSOeven, settings) +
                  expectation_1level(tf, SymmetryGroup::kSOodd, settings));
  }
  const int eps = kernel_sign(g);
  const double smooth =
      tf.phihat0() + (eps == 0 ? 0.0 : eps * sinc_mass(tf, settings));
  const double delta = g == SymmetryGroup::kSOodd ? tf.phi0() : 0.0;
  return (smooth + delta) / tf.phi0();
}

namespace {

// int int phi1 phi2 K(x - y)^2 = int (1 - |t|)_+ phihat1(t) phihat2(t) dt.
double diagonal_pair_term(const TestFunction& a, const TestFunction& b,
                          const QuadratureSettings& settings) {
  const double top = std::min({1.0, a.support_bound(), b.support_bound()});
  const double norm = a.phihat0() * b.phihat0();
  auto integrand = [&](double t) {
    return (1.0 - t) * a.phihat(t) * b.phihat(t) / norm;
  };
  return 2.0 * norm * integrate(integrand, 0.0, top, settings).value;
}

// int int phi1(x) phi2(y) K(x - y) K(x + y) dx dy
//   = (1/2) int int_{|u| + |w| <= 1} phihat1(u) phihat2(w) du dw,
// with w = (1 - u) s mapping the quarter-diamond onto the unit square.
double cross_term(const TestFunction& a, const TestFunction& b,
                  const QuadratureSettings& settings) {
  const double norm = a.phihat0() * b.phihat0();
  const double u_top = std::min(1.0, a.support_bound());
  auto integrand = [&](double u, double s) {
    const double shrink = 1.0 - u;
    return a.phihat(u) * b.phihat(shrink * s) * shrink / norm;
  };
  const QuadratureResult r =
      integrate_2d(integrand, Rectangle{0.0, u_top, 0.0, 1.0}, settings);
  return 2.0 * norm * r.value;
}

double expectation_2level_split(const TestFunction& a, const TestFunction& b,
                                SymmetryGroup g,
                                const QuadratureSettings& settings) {
  const int eps = kernel_sign(g);
  const double mass_a = eps == 0 ? 0.0 : sinc_mass(a, settings);
  const double mass_b = eps == 0 ? 0.0 : sinc_mass(b, settings);
  const double diag_a = a.phihat0() + eps * mass_a;
  const double diag_b = b.phihat0() + eps * mass_b;

  // K_eps(x, y)^2 = K(x-y)^2 + eps^2 K(x+y)^2 + 2 eps K(x-y) K(x+y); the
  // K(x+y)^2 piece integrates like K(x-y)^2 because phi2 is even.
  const double pair = diagonal_pair_term(a, b, settings);
  double off = pair;
  if (eps != 0) off += pair + 2.0 * eps * cross_term(a, b, settings);

  double total = diag_a * diag_b - off;
  if (g == SymmetryGroup::kSOodd) {
    // delta(x) K_{-1}(y, y) + delta(y) K_{-1}(x, x).
    total += a.phi0() * (b.phihat0() - mass_b) +
             b.phi0() * (a.phihat0() - mass_a);
  }
  return total / (a.phi0() * b.phi0());
}

}  // namespace

double expectation_2level(const TestFunction& tf1, const TestFunction& tf2,
                          SymmetryGroup g,
                          const QuadratureSettings& settings) {
  if (g == SymmetryGroup::kO) {
    return 0.5 * (expectation_2level_split(tf1, tf2, SymmetryGroup::kSOeven,
                                           settings) +
                  expectation_2level_split(tf1, tf2, SymmetryGroup::kSOodd,
                                           settings));
  }
  return expectation_2level_split(tf1, tf2, g, settings);
}

double raw_to_centered(double mu, double mu2raw) { return mu2raw - mu * mu; }

double raw_to_centered3(double mu, double mu2raw, double mu3raw) {
  return mu3raw - 3.0 * mu * mu2raw + 2.0 * mu * mu * mu;
}

}  // namespace lowlying
