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

#include "lowlying/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "lowlying/error.hpp"

namespace lowlying {
namespace {

// Kronrod abscissae on [-1, 1] (positive half, descending); odd indices are
// the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525775910, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651146};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool splittable;
};

Panel gauss_kronrod21(Integrand f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = f(center);
  double kronrod = f_center * kWgk[10];
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  std::array<double, 10> f_lo{};
  std::array<double, 10> f_hi{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f_lo[j] = f(center - dx);
    f_hi[j] = f(center + dx);
    const double pair = f_lo[j] + f_hi[j];
    kronrod += kWgk[j] * pair;
    abs_sum += kWgk[j] * (std::abs(f_lo[j]) + std::abs(f_hi[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  // Deviation from the mean, used to temper the raw |K - G| estimate the
  // same way QUADPACK's qk21 does.
  const double mean = 0.5 * kronrod;
  double asc = kWgk[10] * std::abs(f_center - mean);
  for (int j = 0; j < 10; ++j) {
    asc += kWgk[j] * (std::abs(f_lo[j] - mean) + std::abs(f_hi[j] - mean));
  }

  const double result = kronrod * half;
  const double abs_result = abs_sum * std::abs(half);
  const double asc_result = asc * std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (asc_result != 0.0 && err != 0.0) {
    err = asc_result * std::min(1.0, std::pow(200.0 * err / asc_result, 1.5));
  }
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kTiny = std::numeric_limits<double>::min();
  if (abs_result > kTiny / (50.0 * kEps)) {
    err = std::max(err, 50.0 * kEps * abs_result);
  }
  const bool splittable =
      std::abs(half) > 100.0 * kEps * std::max(std::abs(center), 1e-300);
  return Panel{a, b, result, err, splittable};
}

bool heap_order(const Panel& lhs, const Panel& rhs) {
  // Unsplittable panels sink so the worst splittable one is on top.
  if (lhs.splittable != rhs.splittable) return !lhs.splittable;
  return lhs.error < rhs.error;
}

void check_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("integrand is not finite at ") + what);
  }
}

}  // namespace

void QuadratureSettings::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "quadrature settings require abs_tol > 0, rel_tol > 0, "
                "max_subdivisions >= 1");
  }
  if (!(tail.fraction_of_abs_tol > 0.0) || !(tail.max_extent > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "tail policy requires a positive fraction and extent");
  }
}

double QuadratureSettings::target(double value) const {
  return std::max(abs_tol, rel_tol * std::abs(value));
}

QuadratureResult integrate(Integrand f, std::span<const double> breakpoints,
                           const QuadratureSettings& settings) {
  settings.validate();
  if (breakpoints.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "integration needs at least two breakpoints");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1]) ||
        !std::isfinite(breakpoints[i]) || !std::isfinite(breakpoints[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "integration limits must be finite and increasing");
    }
  }

  std::vector<Panel> heap;
  heap.reserve(breakpoints.size() + 2 * settings.max_subdivisions);
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    heap.push_back(gauss_kronrod21(f, breakpoints[i - 1], breakpoints[i]));
  }
  std::make_heap(heap.begin(), heap.end(), heap_order);
  int evaluations = 21 * static_cast<int>(heap.size());

  auto totals = [&heap]() {
    double value = 0.0;
    double error = 0.0;
    for (const Panel& p : heap) {
      value += p.value;
      error += p.error;
    }
    return std::pair{value, error};
  };

  auto [value, error] = totals();
  check_finite(value, "one or more sample points");
  int subdivisions = 0;
  while (error > settings.target(value) &&
         subdivisions < settings.max_subdivisions) {
    std::pop_heap(heap.begin(), heap.end(), heap_order);
    const Panel worst = heap.back();
    if (!worst.splittable) {
      heap.pop_back();
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), heap_order);
      break;
    }
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gauss_kronrod21(f, worst.a, mid);
    const Panel right = gauss_kronrod21(f, mid, worst.b);
    evaluations += 42;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), heap_order);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), heap_order);
    ++subdivisions;
    // Running sums drift; resynchronise occasionally and before exiting.
    if (subdivisions % 64 == 0) std::tie(value, error) = totals();
  }
  std::tie(value, error) = totals();
  check_finite(value, "one or more sample points");

  if (error > settings.target(value)) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "adaptive quadrature did not converge after " << subdivisions
        << " subdivisions: estimate " << value << ", error " << error
        << ", target " << settings.target(value);
    throw QuadratureError(msg.str(), value, error);
  }
  return QuadratureResult{value, error, evaluations};
}

QuadratureResult integrate(Integrand f, double a, double b,
                           const QuadratureSettings& settings) {
  const std::array<double, 2> limits = {a, b};
  return integrate(f, limits, settings);
}

double PowerLawDecay::operator()(double x) const {
  return coefficient * std::pow(std::abs(x), -exponent);
}

double PowerLawDecay::sinc_weighted_tail(double x) const {
  // int_X^inf C x^-p / (2 pi x) dx = C X^-p / (2 pi p).
  return coefficient * std::pow(x, -exponent) /
         (2.0 * std::numbers::pi * exponent);
}

double sinc2pi(double x) {
  const double t = 2.0 * std::numbers::pi * x;
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(t) / t;
}

QuadratureResult integrate_sinc_weighted(Integrand even_f,
                                         const PowerLawDecay& decay,
                                         const QuadratureSettings& settings) {
  settings.validate();
  if (!(decay.exponent > 0.0) || !(decay.coefficient >= 0.0) ||
      !std::isfinite(decay.coefficient)) {
    throw Error(ErrorCode::kInvalidArgument,
                "decay envelope is not integrable against the sinc weight "
                "(need coefficient >= 0 and exponent > 0)");
  }

  // Both tails together must stay below the budget.
  const double budget = settings.tail.fraction_of_abs_tol * settings.abs_tol;
  double cut = 0.5;
  if (decay.coefficient > 0.0) {
    const double raw = std::pow(
        decay.coefficient / (std::numbers::pi * decay.exponent * budget),
        1.0 / decay.exponent);
    cut = std::max(0.5, std::ceil(2.0 * raw) / 2.0);
  }
  if (cut > settings.tail.max_extent) {
    std::ostringstream msg;
    msg << "sinc-weighted tail needs truncation at |x| = " << cut
        << ", beyond max_extent " << settings.tail.max_extent;
    throw QuadratureError(msg.str(), 0.0,
                          std::numeric_limits<double>::infinity());
  }
  const double tail = 2.0 * decay.sinc_weighted_tail(cut);

  const auto panels = static_cast<std::size_t>(std::lround(2.0 * cut));
  std::vector<double> breaks(panels + 1);
  for (std::size_t k = 0; k <= panels; ++k) breaks[k] = 0.5 * k;

  auto weighted = [&](double x) { return even_f(x) * sinc2pi(x); };
  QuadratureSettings half_line = settings;
  // Symmetry doubles the half-line result and its error.
  half_line.abs_tol = 0.5 * (settings.abs_tol - tail);
  half_line.max_subdivisions =
      settings.max_subdivisions + static_cast<int>(panels);
  const QuadratureResult half = integrate(weighted, breaks, half_line);
  return QuadratureResult{2.0 * half.value, 2.0 * half.error + tail,
                          half.evaluations};
}

QuadratureResult integrate_2d(Integrand2d f, const Rectangle& box,
                              const QuadratureSettings& settings) {
  settings.validate();
  const double width = box.x_hi - box.x_lo;
  QuadratureSettings inner = settings;
  inner.abs_tol = 0.5 * settings.abs_tol / std::max(width, 1.0);
  inner.rel_tol = 0.5 * settings.rel_tol;
  double worst_inner = 0.0;
  int evaluations = 0;
  auto slice = [&](double x) {
    auto row = [&](double y) { return f(x, y); };
    const QuadratureResult r = integrate(row, box.y_lo, box.y_hi, inner);
    worst_inner = std::max(worst_inner, r.error);
    evaluations += r.evaluations;
    return r.value;
  };
  QuadratureSettings outer = settings;
  outer.abs_tol = 0.5 * settings.abs_tol;
  outer.rel_tol = 0.5 * settings.rel_tol;
  const QuadratureResult r = integrate(slice, box.x_lo, box.x_hi, outer);
  return QuadratureResult{r.value, r.error + width * worst_inner,
                          evaluations};
}

}  // namespace lowlying
