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

#include "lowlying/rmt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "lowlying/error.hpp"
#include "lowlying/parallel.hpp"
#include "lowlying/random.hpp"

namespace lowlying {
namespace {

constexpr int kMaxResample = 16;
constexpr double kModulusTolerance = 1e-8;

void require_ensemble_group(SymmetryGroup g) {
  if (g != SymmetryGroup::kSOeven && g != SymmetryGroup::kSOodd &&
      g != SymmetryGroup::kU) {
    throw Error(ErrorCode::kUnsupportedFamily,
                "Monte Carlo ensembles exist for so-even, so-odd and u; got " +
                    std::string(group_name(g)));
  }
}

int dimension_of(SymmetryGroup g, int half_dim) {
  switch (g) {
    case SymmetryGroup::kSOeven: return 2 * half_dim;
    case SymmetryGroup::kSOodd: return 2 * half_dim + 1;
    default: return half_dim;
  }
}

Eigen::MatrixXd haar_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) a(i, j) = normal(rng);
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const auto diag = qr.matrixQR().diagonal();
  // Each reflector with a nonzero coefficient has determinant -1, as does
  // each column negation, so det(q) is known without a factorization.
  bool negative = false;
  for (int j = 0; j < n; ++j) {
    if (qr.hCoeffs()(j) != 0.0) negative = !negative;
    if (diag(j) < 0.0) {
      q.col(j) = -q.col(j);
      negative = !negative;
    }
  }
  if (negative) q.col(0) = -q.col(0);
  return q;
}

Eigen::MatrixXcd haar_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd a(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      a(i, j) = {re, im};
    }
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const auto diag = qr.matrixQR().diagonal();
  for (int j = 0; j < n; ++j) {
    const double r = std::abs(diag(j));
    if (r > 0.0) q.col(j) *= diag(j) / r;
  }
  return q;
}

void check_permutation(std::span<const int> p, int n) {
  if (p.empty()) return;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  bool ok = p.size() == static_cast<std::size_t>(n);
  for (std::size_t i = 0; ok && i < p.size(); ++i) {
    ok = p[i] >= 0 && p[i] < n && !seen[p[i]];
    if (ok) seen[p[i]] = true;
  }
  if (!ok) {
    throw Error(ErrorCode::kInvalidArgument,
                "conjugation must be a permutation of 0.." + std::to_string(n - 1));
  }
}

// (P Q P^T)(p(i), p(j)) = Q(i, j).
template <typename Matrix>
Matrix conjugate(const Matrix& q, std::span<const int> p) {
  if (p.empty()) return q;
  Matrix out(q.rows(), q.cols());
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    for (Eigen::Index i = 0; i < q.rows(); ++i) out(p[i], p[j]) = q(i, j);
  }
  return out;
}

// std::arg lies in [-pi, pi]; fold -pi onto pi.
double wrap_angle(std::complex<double> z) {
  const double t = std::arg(z);
  return t <= -std::numbers::pi ? std::numbers::pi : t;
}

double batch_moment(std::span<const double> xs, int order, double mean) {
  std::vector<double> terms(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    terms[i] = std::pow(xs[i] - mean, order);
  }
  return pairwise_sum(terms) / static_cast<double>(xs.size());
}

double mean_of(std::span<const double> xs) {
  return pairwise_sum(xs) / static_cast<double>(xs.size());
}

double standard_error(const std::vector<double>& batch_values) {
  const auto b = static_cast<double>(batch_values.size());
  const double m = mean_of(batch_values);
  std::vector<double> sq(batch_values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) {
    sq[i] = (batch_values[i] - m) * (batch_values[i] - m);
  }
  return std::sqrt(pairwise_sum(sq) / (b - 1.0) / b);
}

long double_factorial_odd(int k) {
  long r = 1;
  for (int i = k - 1; i > 1; i -= 2) r *= i;
  return r;
}

}  // namespace

void EnsembleSpec::validate() const {
  require_ensemble_group(group);
  if (half_dim < 1) {
    throw Error(ErrorCode::kInvalidArgument, "N must be >= 1");
  }
  if (samples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "samples must be >= 1");
  }
}

int EnsembleSpec::total_dim() const { return dimension_of(group, half_dim); }

HaarDraw sample_haar(SymmetryGroup group, int half_dim, std::mt19937_64& rng,
                     std::span<const int> conjugation) {
  require_ensemble_group(group);
  if (half_dim < 1) {
    throw Error(ErrorCode::kInvalidArgument, "N must be >= 1");
  }
  const int n = dimension_of(group, half_dim);
  check_permutation(conjugation, n);
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    HaarDraw draw;
    Eigen::VectorXcd lambda;
    if (group == SymmetryGroup::kU) {
      const Eigen::MatrixXcd q = conjugate(haar_unitary(n, rng), conjugation);
      const std::complex<double> det = q.determinant();
      draw.determinant_re = det.real();
      draw.determinant_im = det.imag();
      lambda = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(q, false).eigenvalues();
    } else {
      const Eigen::MatrixXd q = conjugate(haar_orthogonal(n, rng), conjugation);
      draw.determinant_re = q.determinant();
      lambda = Eigen::EigenSolver<Eigen::MatrixXd>(q, false).eigenvalues();
    }
    for (int i = 0; i < n; ++i) {
      draw.max_modulus_error =
          std::max(draw.max_modulus_error, std::abs(std::abs(lambda(i)) - 1.0));
      draw.angles.push_back(wrap_angle(lambda(i)));
    }
    if (draw.max_modulus_error > kModulusTolerance) continue;
    std::sort(draw.angles.begin(), draw.angles.end());
    return draw;
  }
  throw Error(ErrorCode::kNonConvergence,
              "eigenvalues left the unit circle in every resample");
}

std::vector<double> sample_abs_angles(SymmetryGroup group, int half_dim,
                                      std::mt19937_64& rng,
                                      std::span<const int> conjugation) {
  require_ensemble_group(group);
  const int n = dimension_of(group, half_dim);
  check_permutation(conjugation, n);
  Eigen::VectorXd cosines;
  if (group == SymmetryGroup::kU) {
    const Eigen::MatrixXcd q = conjugate(haar_unitary(n, rng), conjugation);
    const Eigen::MatrixXcd h = 0.5 * (q + q.adjoint());
    cosines = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(
                  h, Eigen::EigenvaluesOnly)
                  .eigenvalues();
  } else {
    const Eigen::MatrixXd q = conjugate(haar_orthogonal(n, rng), conjugation);
    const Eigen::MatrixXd s = 0.5 * (q + q.transpose());
    cosines = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                  s, Eigen::EigenvaluesOnly)
                  .eigenvalues();
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[i] = std::acos(std::clamp(cosines(i), -1.0, 1.0));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double linear_statistic(std::span<const double> angles, const TestFunction& tf,
                        int total_dim) {
  if (angles.size() != static_cast<std::size_t>(total_dim)) {
    throw Error(ErrorCode::kInvalidArgument,
                "total_dim must equal the number of angles");
  }
  const double scale = total_dim / (2.0 * std::numbers::pi);
  std::vector<double> terms(angles.size());
  for (std::size_t j = 0; j < angles.size(); ++j) {
    terms[j] = tf.phi(angles[j] * scale);
  }
  return pairwise_sum(terms);
}

std::vector<double> sample_statistics(const EnsembleSpec& spec,
                                      const TestFunction& tf) {
  spec.validate();
  const int n = spec.total_dim();
  std::vector<double> values(spec.samples);
  parallel_for(values.size(), spec.workers, [&](std::size_t s) {
    std::mt19937_64 rng = substream(spec.seed, s);
    const std::vector<double> angles = sample_abs_angles(spec.group, spec.half_dim, rng, spec.conjugation);
    values[s] = linear_statistic(angles, tf, n);
  });
  return values;
}

double EmpiricalMoments::centered_at(int order) const {
  if (order < 2 || order > n_max) {
    throw Error(ErrorCode::kInvalidArgument,
                "order " + std::to_string(order) + " was not computed");
  }
  return centered[order - 2];
}

double EmpiricalMoments::std_error_at(int order) const {
  if (order < 2 || order > n_max || std_errors.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no standard error for order " + std::to_string(order));
  }
  return std_errors[order - 2];
}

EmpiricalMoments moments_from_samples(std::span<const double> values,
                                      int n_max) {
  if (n_max < 2) {
    throw Error(ErrorCode::kInvalidArgument, "n_max must be >= 2");
  }
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no samples");
  }
  EmpiricalMoments out;
  out.n_max = n_max;
  out.sample_count = values.size();
  out.mean = mean_of(values);
  for (int k = 2; k <= n_max; ++k) {
    out.centered.push_back(batch_moment(values, k, out.mean));
  }
  if (values.size() < 2) return out;

  const std::size_t s = values.size();
  const std::size_t batches = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(s)))));
  std::vector<double> batch_means(batches);
  std::vector<std::vector<double>> batch_moments(
      static_cast<std::size_t>(n_max - 1), std::vector<double>(batches));
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t lo = b * s / batches;
    const std::size_t hi = (b + 1) * s / batches;
    const std::span<const double> chunk = values.subspan(lo, hi - lo);
    batch_means[b] = mean_of(chunk);
    for (int k = 2; k <= n_max; ++k) {
      batch_moments[k - 2][b] = batch_moment(chunk, k, batch_means[b]);
    }
  }
  out.mean_std_error = standard_error(batch_means);
  for (const auto& bm : batch_moments) out.std_errors.push_back(standard_error(bm));
  return out;
}

EmpiricalMoments empirical_moments(const EnsembleSpec& spec,
                                   const TestFunction& tf, int n_max) {
  if (n_max < 2) {
    throw Error(ErrorCode::kInvalidArgument, "n_max must be >= 2");
  }
  const std::vector<double> values = sample_statistics(spec, tf);
  return moments_from_samples(values, n_max);
}

double PredictedMoments::centered_at(int order) const {
  if (order < 2 || order - 2 >= static_cast<int>(centered.size())) {
    throw Error(ErrorCode::kInvalidArgument,
                "order " + std::to_string(order) + " was not predicted");
  }
  return centered[order - 2];
}

PredictedMoments predicted_moments(SymmetryGroup group, const TestFunction& tf,
                                   int n_max,
                                   const QuadratureSettings& settings) {
  require_ensemble_group(group);
  if (n_max < 2 || n_max > kMaxMatchingSize) {
    throw Error(ErrorCode::kInvalidArgument,
                "n_max must lie in [2, " + std::to_string(kMaxMatchingSize) + "]");
  }
  PredictedMoments out;
  if (group == SymmetryGroup::kU) {
    out.mean = tf.phihat0();
    const double variance = 0.5 * sigma2(tf, tf, settings);
    for (int k = 2; k <= n_max; ++k) {
      out.centered.push_back(
          k % 2 ? 0.0
                : static_cast<double>(double_factorial_odd(k)) *
                      std::pow(variance, k / 2));
    }
    return out;
  }
  out.mean = tf.phi0() * expectation_1level(tf, group, settings);
  for (int k = 2; k <= n_max; ++k) {
    MomentRequest request;
    request.test_functions.assign(static_cast<std::size_t>(k), tf);
    request.family = group;
    request.regime = Regime::kWithR;
    out.centered.push_back(centered_moment(request, settings).value);
  }
  return out;
}

std::vector<MomentCheck> compare_moments(const EmpiricalMoments& emp,
                                         const PredictedMoments& pred,
                                         std::span<const int> orders,
                                         std::span<const double> finite_size_c,
                                         int half_dim) {
  if (!finite_size_c.empty() && finite_size_c.size() != 1 &&
      finite_size_c.size() != orders.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "finite-size constants must be empty, one value, or one per order");
  }
  std::vector<MomentCheck> out;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    MomentCheck c;
    c.order = orders[i];
    c.empirical = emp.centered_at(c.order);
    c.predicted = pred.centered_at(c.order);
    c.std_error = emp.std_errors.empty() ? 0.0 : emp.std_error_at(c.order);
    c.z_score = c.std_error > 0.0 ? (c.empirical - c.predicted) / c.std_error
                                  : 0.0;
    const double constant = finite_size_c.empty()      ? 0.0
                            : finite_size_c.size() == 1 ? finite_size_c[0]
                                                        : finite_size_c[i];
    c.allowance = 3.0 * c.std_error + constant / half_dim;
    c.pass = std::abs(c.empirical - c.predicted) <= c.allowance;
    out.push_back(c);
  }
  return out;
}

}  // namespace lowlying
