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

#include "lowlying/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lowlying/bounds.hpp"
#include "lowlying/error.hpp"
#include "lowlying/parallel.hpp"
#include "lowlying/random.hpp"

namespace lowlying {
namespace {

constexpr double kMaxViolation = 1e6;

struct Evaluator {
  const OptimizationProblem& problem;
  const QuadratureSettings& quadrature;
  const std::vector<double>& lower;
  const std::vector<double>& upper;
  int evaluations = 0;

  std::vector<double> clamp(std::vector<double> x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = std::clamp(x[i], lower[i], upper[i]);
    }
    return x;
  }

  ObjectiveValue operator()(const std::vector<double>& x) {
    ++evaluations;
    return objective(x, problem, quadrature);
  }
};

struct Vertex {
  std::vector<double> x;
  ObjectiveValue f;
};

// Feasible points order before infeasible ones; ties by value.
bool better(const ObjectiveValue& a, const ObjectiveValue& b) {
  if (a.feasible != b.feasible) return a.feasible;
  return a.value < b.value;
}

RestartTrace nelder_mead(Evaluator& eval, std::vector<double> start,
                         int restart, const SearchSettings& settings) {
  RestartTrace trace;
  trace.restart = restart;
  start = eval.clamp(std::move(start));
  trace.start = start;
  const ObjectiveValue f0 = eval(start);
  trace.start_value = f0.value;
  trace.start_feasible = f0.feasible;

  const std::size_t n = start.size();
  if (n == 0) {
    trace.best = start;
    trace.best_value = f0.value;
    trace.best_feasible = f0.feasible;
    trace.evaluations = eval.evaluations;
    trace.converged = true;
    trace.history.push_back(f0.value);
    return trace;
  }

  std::vector<Vertex> simplex;
  simplex.push_back({start, f0});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = start;
    const double width = eval.upper[i] - eval.lower[i];
    double step = 0.1 * width;
    if (x[i] + step > eval.upper[i]) step = -step;
    x[i] += step;
    x = eval.clamp(std::move(x));
    simplex.push_back({x, eval(x)});
  }

  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) {
                       return better(a.f, b.f);
                     });
  };
  auto trial = [&](const std::vector<double>& centroid,
                   const std::vector<double>& from, double t) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = centroid[i] + t * (from[i] - centroid[i]);
    }
    x = eval.clamp(std::move(x));
    return Vertex{x, eval(x)};
  };

  order();
  while (eval.evaluations < settings.max_evals) {
    ++trace.iterations;
    const Vertex& lo = simplex.front();
    const Vertex& hi = simplex.back();
    double diameter = 0.0;
    for (std::size_t v = 1; v <= n; ++v) {
      for (std::size_t i = 0; i < n; ++i) {
        const double width = eval.upper[i] - eval.lower[i];
        diameter = std::max(
            diameter, std::abs(simplex[v].x[i] - lo.x[i]) / width);
      }
    }
    const bool flat = lo.f.feasible && hi.f.feasible &&
                      hi.f.value - lo.f.value <=
                          settings.simplex_tolerance * std::abs(lo.f.value);
    if (flat || diameter <= 1e-12) {
      trace.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    const Vertex reflected = trial(centroid, simplex.back().x, -1.0);
    if (better(reflected.f, simplex.front().f)) {
      const Vertex expanded = trial(centroid, simplex.back().x, -2.0);
      simplex.back() = better(expanded.f, reflected.f) ? expanded : reflected;
    } else if (better(reflected.f, simplex[n - 1].f)) {
      simplex.back() = reflected;
    } else {
      const bool outside = better(reflected.f, simplex.back().f);
      const Vertex contracted =
          outside ? trial(centroid, reflected.x, 0.5)
                  : trial(centroid, simplex.back().x, 0.5);
      const Vertex& reference = outside ? reflected : simplex.back();
      if (better(contracted.f, reference.f)) {
        simplex.back() = contracted;
      } else {
        for (std::size_t v = 1; v <= n; ++v) {
          simplex[v] = trial(simplex.front().x, simplex[v].x, 0.5);
        }
      }
    }
    order();
    trace.history.push_back(simplex.front().f.value);
  }

  trace.best = simplex.front().x;
  trace.best_value = simplex.front().f.value;
  trace.best_feasible = simplex.front().f.feasible;
  trace.evaluations = eval.evaluations;
  return trace;
}

std::string format_basis_number(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace

std::string_view basis_kind_name(BasisKind k) {
  switch (k) {
    case BasisKind::kCosineSeries: return "cos";
    case BasisKind::kPolynomial: return "poly";
    case BasisKind::kSinOfSquare: return "sinx2";
    case BasisKind::kFixed: return "fixed";
  }
  return "?";
}

void GeneratorBasis::validate() const {
  if (kind == BasisKind::kFixed) {
    if (!fixed) {
      throw Error(ErrorCode::kInvalidArgument,
                  "fixed basis slot carries no test function");
    }
    if (dimension != 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "fixed basis slot has dimension 0");
    }
    return;
  }
  if (kind == BasisKind::kSinOfSquare && dimension != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "sin-of-square basis has exactly one coefficient");
  }
  if (dimension < 1) {
    throw Error(ErrorCode::kInvalidArgument, "basis dimension must be >= 1");
  }
  if (!(half_support > 0.0) || !std::isfinite(half_support)) {
    throw Error(ErrorCode::kInvalidArgument,
                "basis half-support must be positive and finite");
  }
  if (lower.size() != static_cast<std::size_t>(dimension) ||
      upper.size() != static_cast<std::size_t>(dimension)) {
    throw Error(ErrorCode::kInvalidArgument,
                "coefficient box must have one interval per coefficient");
  }
  for (int i = 0; i < dimension; ++i) {
    if (!(lower[i] < upper[i]) || !std::isfinite(lower[i]) ||
        !std::isfinite(upper[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "coefficient box intervals must be finite with lo < hi");
    }
  }
  if (!initial.empty() && initial.size() != static_cast<std::size_t>(dimension)) {
    throw Error(ErrorCode::kInvalidArgument,
                "initial point has the wrong dimension");
  }
}

std::vector<double> GeneratorBasis::start_point() const {
  std::vector<double> x = initial;
  if (x.empty()) {
    x.assign(dimension, 0.0);
    if (kind == BasisKind::kSinOfSquare) {
      x[0] = 1.0;
    } else if (dimension > 0) {
      // The constant generator, i.e. a naive function.
      x[0] = 1.0;
    }
  }
  for (int i = 0; i < dimension; ++i) {
    x[i] = std::clamp(x[i], lower[i], upper[i]);
  }
  return x;
}

GeneratorSpec GeneratorBasis::spec(std::span<const double> coeffs) const {
  GeneratorSpec g;
  g.half_support = half_support;
  g.coefficients.assign(coeffs.begin(), coeffs.end());
  switch (kind) {
    case BasisKind::kCosineSeries: g.kind = GeneratorKind::kCosineSeries; break;
    case BasisKind::kPolynomial: g.kind = GeneratorKind::kPolynomial; break;
    case BasisKind::kSinOfSquare: g.kind = GeneratorKind::kSinOfSquare; break;
    case BasisKind::kFixed:
      throw Error(ErrorCode::kInvalidArgument, "fixed slot has no generator");
  }
  return g;
}

TestFunction GeneratorBasis::build(std::span<const double> coeffs,
                                   const QuadratureSettings& settings) const {
  if (kind == BasisKind::kFixed) return *fixed;
  return make_from_generator(spec(coeffs), settings);
}

double GeneratorBasis::support() const {
  return kind == BasisKind::kFixed ? fixed->support_bound()
                                   : 2.0 * half_support;
}

std::string GeneratorBasis::label() const {
  if (kind == BasisKind::kFixed) return "fixed:" + fixed->label();
  std::string out = std::string(basis_kind_name(kind)) + ":dim=" +
                    std::to_string(dimension) +
                    ":half=" + format_basis_number(half_support) + ":box=";
  for (int i = 0; i < dimension; ++i) {
    if (i) out += ';';
    out += format_basis_number(lower[i]) + "/" + format_basis_number(upper[i]);
  }
  return out;
}

GeneratorBasis cosine_basis(int dimension, double half_support, double lo,
                            double hi) {
  GeneratorBasis b;
  b.kind = BasisKind::kCosineSeries;
  b.dimension = dimension;
  b.half_support = half_support;
  b.lower.assign(dimension, lo);
  b.upper.assign(dimension, hi);
  return b;
}

GeneratorBasis polynomial_basis(int dimension, double half_support, double lo,
                                double hi) {
  GeneratorBasis b = cosine_basis(dimension, half_support, lo, hi);
  b.kind = BasisKind::kPolynomial;
  return b;
}

GeneratorBasis sinx2_basis(double half_support, double lo, double hi) {
  GeneratorBasis b = cosine_basis(1, half_support, lo, hi);
  b.kind = BasisKind::kSinOfSquare;
  return b;
}

GeneratorBasis fixed_basis(const TestFunction& tf) {
  GeneratorBasis b;
  b.kind = BasisKind::kFixed;
  b.dimension = 0;
  b.fixed = tf;
  b.half_support = tf.support_bound() / 2.0;
  return b;
}

void OptimizationProblem::validate() const {
  if (moment_order < 2 || moment_order % 2 != 0 ||
      moment_order > kMaxMatchingSize) {
    throw Error(ErrorCode::kInvalidArgument,
                "moment order must be even and in [2, " +
                    std::to_string(kMaxMatchingSize) + "]");
  }
  if (slots.size() != static_cast<std::size_t>(moment_order / 2)) {
    throw Error(ErrorCode::kInvalidArgument,
                "moment order " + std::to_string(moment_order) + " needs " +
                    std::to_string(moment_order / 2) + " slots, got " +
                    std::to_string(slots.size()));
  }
  check_parity(family, rank);
  if (!(support_budget > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "support budget must be positive");
  }
  const double tolerance = 1.0 + 1e-12;
  const double with_r = with_r_support_threshold(moment_order);
  const double mock = mock_gaussian_support_threshold(moment_order, weight_k);
  const double limit = regime == Regime::kWithR          ? with_r
                       : regime == Regime::kMockGaussian ? mock
                                                         : std::max(with_r, mock);
  if (support_budget > limit * tolerance) {
    throw Error(ErrorCode::kSupportViolation,
                "support budget " + format_basis_number(support_budget) +
                    " exceeds the regime threshold " +
                    format_basis_number(limit));
  }
  for (const GeneratorBasis& b : slots) {
    b.validate();
    if (b.kind != BasisKind::kFixed &&
        std::abs(2.0 * b.half_support - support_budget) >
            1e-12 * support_budget) {
      throw Error(ErrorCode::kInvalidArgument,
                  "generator slot half-support must equal support_budget / 2");
    }
    if (b.support() > support_budget * tolerance) {
      throw Error(ErrorCode::kSupportViolation,
                  "slot " + b.label() + " exceeds the support budget");
    }
  }
}

int OptimizationProblem::dimension() const {
  int d = 0;
  for (const GeneratorBasis& b : slots) d += b.dimension;
  return d;
}

std::vector<std::vector<double>> OptimizationProblem::split(
    std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(dimension())) {
    throw Error(ErrorCode::kInvalidArgument,
                "coefficient vector has the wrong length");
  }
  std::vector<std::vector<double>> out;
  std::size_t offset = 0;
  for (const GeneratorBasis& b : slots) {
    const auto d = static_cast<std::size_t>(b.dimension);
    out.emplace_back(x.begin() + offset, x.begin() + offset + d);
    offset += d;
  }
  return out;
}

ObjectiveValue objective(std::span<const double> x,
                         const OptimizationProblem& problem,
                         const QuadratureSettings& settings) {
  const auto parts = problem.split(x);
  std::vector<TestFunction> tfs;
  tfs.reserve(parts.size());
  double violation = 0.0;
  try {
    for (std::size_t s = 0; s < parts.size(); ++s) {
      TestFunction tf = problem.slots[s].build(parts[s], settings);
      const double ratio = one_level_mean(tf) / tf.phi0();
      if (!(problem.rank > ratio)) {
        violation += std::isfinite(ratio) ? ratio - problem.rank : kMaxViolation;
      }
      tfs.push_back(std::move(tf));
    }
  } catch (const Error&) {
    // Unbuildable slot, e.g. a generator with vanishing integral.
    violation = kMaxViolation;
  }
  if (violation > 0.0 || tfs.size() != parts.size()) {
    violation = std::min(std::max(violation, 0.0), kMaxViolation);
    return {kPenaltyScale * (1.0 + violation), false, violation};
  }
  // At exact equality r = c_phi the denominator vanishes; treat as infeasible.
  try {
    const BoundResult r =
        bound_moment(tfs, problem.family, problem.rank, problem.weight_k,
                     problem.regime, settings);
    return {r.upper_bound, true, 0.0};
  } catch (const Error&) {
    return {kPenaltyScale, false, 0.0};
  }
}

SearchResult search(const OptimizationProblem& problem,
                    const SearchSettings& settings) {
  problem.validate();
  if (settings.restarts < 1 || settings.max_evals < 1 ||
      !(settings.simplex_tolerance >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "search needs restarts >= 1, max_evals >= 1, tolerance >= 0");
  }
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> start0;
  for (const GeneratorBasis& b : problem.slots) {
    lower.insert(lower.end(), b.lower.begin(), b.lower.end());
    upper.insert(upper.end(), b.upper.begin(), b.upper.end());
    const std::vector<double> s = b.start_point();
    start0.insert(start0.end(), s.begin(), s.end());
  }
  // With no free coefficients every restart would repeat the same point.
  const int restarts = problem.dimension() == 0 ? 1 : settings.restarts;

  std::vector<RestartTrace> traces(static_cast<std::size_t>(restarts));
  parallel_for(traces.size(), settings.workers, [&](std::size_t i) {
    std::vector<double> start = start0;
    if (i > 0) {
      std::mt19937_64 rng = substream(settings.seed, i);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (std::size_t k = 0; k < start.size(); ++k) {
        start[k] = lower[k] + unit(rng) * (upper[k] - lower[k]);
      }
    }
    Evaluator eval{problem, settings.quadrature, lower, upper};
    traces[i] = nelder_mead(eval, std::move(start), static_cast<int>(i),
                            settings);
  });

  int best = -1;
  for (int i = 0; i < restarts; ++i) {
    const RestartTrace& t = traces[i];
    if (!t.best_feasible) continue;
    if (best < 0 || t.best_value < traces[best].best_value) best = i;
  }
  if (best < 0) {
    throw Error(ErrorCode::kInfeasible,
                "no restart reached a point with rank > c_phi in every slot");
  }

  SearchResult out;
  out.best_restart = best;
  out.best_bound = traces[best].best_value;
  out.coefficients = problem.split(traces[best].best);
  for (std::size_t s = 0; s < problem.slots.size(); ++s) {
    const GeneratorBasis& b = problem.slots[s];
    out.test_functions.push_back(
        b.kind == BasisKind::kFixed ? b.fixed->label()
                                    : b.spec(out.coefficients[s]).label());
  }
  out.trace = std::move(traces);
  return out;
}

}  // namespace lowlying
