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

#include "lowlying/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "lowlying/error.hpp"

namespace lowlying {
namespace {

void check_matching_size(int two_m) {
  if (two_m < 2 || two_m % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "perfect matchings need an even, positive number of points; "
                "got " + std::to_string(two_m));
  }
  if (two_m > kMaxMatchingSize) {
    throw Error(ErrorCode::kInvalidArgument,
                "refusing to enumerate matchings of " + std::to_string(two_m) +
                    " points (limit " + std::to_string(kMaxMatchingSize) + ")");
  }
}

void visit_matchings(
    std::vector<int>& partner, std::vector<std::pair<int, int>>& pairs,
    FunctionRef<void(std::span<const std::pair<int, int>>)> visit) {
  const auto n = static_cast<int>(partner.size());
  int first = 0;
  while (first < n && partner[first] >= 0) ++first;
  if (first == n) {
    visit(pairs);
    return;
  }
  for (int j = first + 1; j < n; ++j) {
    if (partner[j] >= 0) continue;
    partner[first] = j;
    partner[j] = first;
    pairs.emplace_back(first, j);
    visit_matchings(partner, pairs, visit);
    pairs.pop_back();
    partner[first] = -1;
    partner[j] = -1;
  }
}

// Pairwise summation in a fixed order; the result does not depend on how the
// terms were produced.
double tree_sum(std::span<const double> terms) {
  if (terms.empty()) return 0.0;
  if (terms.size() <= 8) {
    double acc = 0.0;
    for (double t : terms) acc += t;
    return acc;
  }
  const std::size_t half = terms.size() / 2;
  return tree_sum(terms.first(half)) + tree_sum(terms.subspan(half));
}

}  // namespace

std::string Matching::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i > 0) out << '|';
    out << pairs[i].first + 1 << pairs[i].second + 1;
  }
  return out.str();
}

std::uint64_t matching_count(int two_m) {
  if (two_m < 2 || two_m % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "matching_count needs an even, positive argument");
  }
  std::uint64_t count = 1;
  for (int k = two_m - 1; k > 1; k -= 2) count *= static_cast<std::uint64_t>(k);
  return count;
}

void for_each_matching(
    int two_m,
    FunctionRef<void(std::span<const std::pair<int, int>>)> visit) {
  check_matching_size(two_m);
  std::vector<int> partner(static_cast<std::size_t>(two_m), -1);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(two_m / 2));
  visit_matchings(partner, pairs, visit);
}

std::vector<Matching> enumerate_matchings(int two_m) {
  check_matching_size(two_m);
  std::vector<Matching> out;
  out.reserve(matching_count(two_m));
  for_each_matching(two_m, [&out](std::span<const std::pair<int, int>> p) {
    out.push_back(Matching{{p.begin(), p.end()}});
  });
  return out;
}

double matching_sum(std::span<const TestFunction> tfs,
                    const QuadratureSettings& settings) {
  const auto n = static_cast<int>(tfs.size());
  check_matching_size(n);

  // Identical functions share a label, so repeated slots cost one sigma^2.
  std::map<std::pair<std::string, std::string>, double> cache;
  std::vector<double> table(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::string a = tfs[i].label();
      std::string b = tfs[j].label();
      if (b < a) std::swap(a, b);
      auto key = std::make_pair(std::move(a), std::move(b));
      auto it = cache.find(key);
      if (it == cache.end()) {
        it = cache.emplace(std::move(key), sigma2(tfs[i], tfs[j], settings))
                 .first;
      }
      table[i * n + j] = table[j * n + i] = it->second;
    }
  }

  std::vector<double> products;
  products.reserve(matching_count(n));
  for_each_matching(n, [&](std::span<const std::pair<int, int>> pairs) {
    double prod = 1.0;
    for (const auto& [a, b] : pairs) prod *= table[a * n + b];
    products.push_back(prod);
  });
  return tree_sum(products);
}

double r_term(std::span<const TestFunction> tfs,
              const QuadratureSettings& settings) {
  const auto n = static_cast<int>(tfs.size());
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "R_n needs n >= 2");
  }
  double at_zero = 1.0;
  PowerLawDecay envelope{1.0, 0.0};
  for (const TestFunction& tf : tfs) {
    at_zero *= tf.phi0();
    const PowerLawDecay e = tf.decay_envelope();
    envelope.coefficient *= e.coefficient;
    envelope.exponent += e.exponent;
  }
  // Work with prod phi_j / prod phi_j(0) so tolerances are scale-free.
  envelope.coefficient /= at_zero;
  auto product = [&](double x) {
    double p = 1.0;
    for (const TestFunction& tf : tfs) p *= tf.phi(x);
    return p / at_zero;
  };
  const double weighted =
      integrate_sinc_weighted(product, envelope, settings).value;
  const double prefactor = (n % 2 == 0 ? -1.0 : 1.0) * std::ldexp(1.0, n - 1);
  return prefactor * at_zero * (weighted - 0.5);
}

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::kAuto: return "auto";
    case Regime::kWithR: return "with_R";
    case Regime::kMockGaussian: return "mock_gaussian";
  }
  return "?";
}

Regime parse_regime(std::string_view name) {
  if (name == "auto") return Regime::kAuto;
  if (name == "with_R" || name == "with-r" || name == "with_r") {
    return Regime::kWithR;
  }
  if (name == "mock_gaussian" || name == "mock-gaussian") {
    return Regime::kMockGaussian;
  }
  throw Error(ErrorCode::kParse, "unknown regime '" + std::string(name) +
                                     "' (expected auto, with_R, mock_gaussian)");
}

double with_r_support_threshold(int n) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need n >= 2");
  return 1.0 / static_cast<double>(n - 1);
}

double mock_gaussian_support_threshold(int n, int weight_k) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need n >= 2");
  if (weight_k < 2) {
    throw Error(ErrorCode::kInvalidArgument, "weight k must be >= 2");
  }
  return (2.0 * weight_k - 1.0) / (static_cast<double>(n) * weight_k);
}

Regime resolve_regime(std::span<const TestFunction> tfs, int weight_k,
                      Regime requested) {
  const auto n = static_cast<int>(tfs.size());
  double widest = 0.0;
  for (const TestFunction& tf : tfs) {
    widest = std::max(widest, tf.support_bound());
  }
  // Supports are open intervals: phihat vanishing at +-threshold is inside.
  auto fits = [widest](double threshold) {
    return widest <= threshold * (1.0 + 1e-12);
  };
  const double r_limit = with_r_support_threshold(n);
  const double mock_limit = mock_gaussian_support_threshold(n, weight_k);
  auto describe = [&](const char* what, double limit) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "support bound " << widest << " exceeds the " << what
        << " threshold " << limit << " for n = " << n;
    if (what[0] == 'm') msg << ", k = " << weight_k;
    return msg.str();
  };
  switch (requested) {
    case Regime::kWithR:
      if (!fits(r_limit)) {
        throw Error(ErrorCode::kSupportViolation,
                    describe("with-R 1/(n-1)", r_limit));
      }
      return Regime::kWithR;
    case Regime::kMockGaussian:
      if (!fits(mock_limit)) {
        throw Error(ErrorCode::kSupportViolation,
                    describe("mock-Gaussian (2k-1)/(nk)", mock_limit));
      }
      return Regime::kMockGaussian;
    case Regime::kAuto:
      if (fits(mock_limit)) return Regime::kMockGaussian;
      if (fits(r_limit)) return Regime::kWithR;
      throw Error(ErrorCode::kSupportViolation,
                  describe("mock-Gaussian (2k-1)/(nk)", mock_limit) +
                      " and the with-R threshold " + std::to_string(r_limit));
  }
  return requested;
}

MomentResult centered_moment(const MomentRequest& request,
                             const QuadratureSettings& settings) {
  const auto n = static_cast<int>(request.test_functions.size());
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "centered moments need at least two test functions");
  }
  if (n > kMaxMatchingSize) {
    throw Error(ErrorCode::kInvalidArgument,
                "moment order " + std::to_string(n) + " exceeds the limit " +
                    std::to_string(kMaxMatchingSize));
  }
  int sign = 0;
  switch (request.family) {
    case SymmetryGroup::kSOeven: sign = 1; break;
    case SymmetryGroup::kSOodd: sign = -1; break;
    case SymmetryGroup::kO: sign = 0; break;
    default:
      throw Error(ErrorCode::kUnsupportedFamily,
                  "centered moments are available for so-even, so-odd and o; "
                  "got " + std::string(group_name(request.family)));
  }

  MomentResult result;
  result.regime =
      resolve_regime(request.test_functions, request.weight_k, request.regime);
  result.sign_applied = sign;
  if (n % 2 == 0) {
    result.matching_sum = matching_sum(request.test_functions, settings);
  }
  if (result.regime == Regime::kWithR) {
    result.r_term = r_term(request.test_functions, settings);
  }
  result.value = result.matching_sum + sign * result.r_term;
  return result;
}

}  // namespace lowlying
