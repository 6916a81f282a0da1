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


// Hot paths: pair variances, the R term, generator tabulation, the two table
// columns, one Haar draw, and one optimizer objective evaluation.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "lowlying/bounds.hpp"
#include "lowlying/moments.hpp"
#include "lowlying/optimize.hpp"
#include "lowlying/random.hpp"
#include "lowlying/rmt.hpp"
#include "lowlying/tables.hpp"

namespace {

using namespace lowlying;

void BM_Sigma2Naive(benchmark::State& state) {
  const TestFunction a = make_naive(1.0 / 3.0), b = make_naive(0.25);
  for (auto _ : state) benchmark::DoNotOptimize(sigma2(a, b));
}
BENCHMARK(BM_Sigma2Naive);

void BM_Sigma2Generator(benchmark::State& state) {
  const TestFunction a =
      make_from_generator({GeneratorKind::kSinOfSquare, {1.0}, 0.125});
  for (auto _ : state) benchmark::DoNotOptimize(sigma2(a, a));
}
BENCHMARK(BM_Sigma2Generator);

void BM_RTerm(benchmark::State& state) {
  const std::vector<TestFunction> tfs(static_cast<std::size_t>(state.range(0)),
                                      make_naive(1.0 / 3.0));
  for (auto _ : state) benchmark::DoNotOptimize(r_term(tfs));
}
BENCHMARK(BM_RTerm)->Arg(2)->Arg(4)->Arg(6);

void BM_GeneratorBuild(benchmark::State& state) {
  const GeneratorSpec g{GeneratorKind::kCosineSeries, {1.0, 0.3, -0.2, 0.1}, 0.125};
  for (auto _ : state) benchmark::DoNotOptimize(make_from_generator(g));
}
BENCHMARK(BM_GeneratorBuild)->Unit(benchmark::kMillisecond);

void BM_MatchingSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<TestFunction> tfs;
  for (std::size_t i = 0; i < n; ++i) tfs.push_back(make_naive(0.05 + 0.01 * i));
  for (auto _ : state) benchmark::DoNotOptimize(matching_sum(tfs));
}
BENCHMARK(BM_MatchingSum)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

void BM_BoundMomentMixed(benchmark::State& state) {
  const std::vector<TestFunction> slots = mixed_moment_slots();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bound_moment(slots, SymmetryGroup::kSOeven, 100, 2, Regime::kMockGaussian));
  }
}
BENCHMARK(BM_BoundMomentMixed)->Unit(benchmark::kMicrosecond);

void BM_ReproduceTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reproduce_table(TableId::kT5, {}, 1));
}
BENCHMARK(BM_ReproduceTable)->Unit(benchmark::kMillisecond);

void BM_HaarAbsAngles(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng = substream(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_abs_angles(SymmetryGroup::kSOeven, n, rng));
  }
}
BENCHMARK(BM_HaarAbsAngles)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_HaarFullDraw(benchmark::State& state) {
  std::mt19937_64 rng = substream(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_haar(SymmetryGroup::kSOeven, 40, rng));
  }
}
BENCHMARK(BM_HaarFullDraw)->Unit(benchmark::kMicrosecond);

void BM_ObjectiveCos4(benchmark::State& state) {
  OptimizationProblem p;
  p.family = SymmetryGroup::kSOeven;
  p.rank = 100;
  p.support_budget = 0.25;
  p.regime = Regime::kMockGaussian;
  p.slots = {cosine_basis(4, 0.125), fixed_basis(make_naive(0.25))};
  const std::vector<double> x{1.0, 0.3, -0.2, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(objective(x, p));
}
BENCHMARK(BM_ObjectiveCos4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
