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

#include <cmath>
#include <map>

#include "lowlying/error.hpp"
#include "lowlying/parallel.hpp"
#include "lowlying/tables.hpp"

namespace lowlying {

double column_tolerance(TableColumn c) {
  switch (c) {
    case TableColumn::kLevel1:
    case TableColumn::kLevel2: return 5e-5;
    case TableColumn::kMomentNaive: return 1e-4;
    case TableColumn::kMomentMixed: return 1e-3;
  }
  return 0.0;
}

bool cell_agrees(double value, const ReferenceCell& ref, double tolerance) {
  const double diff = std::abs(value - ref.value);
  if (diff <= tolerance * std::abs(ref.value)) return true;
  // The 1e-9 slack absorbs the decimal rounding of the unit itself.
  return diff <= ref.last_digit_unit * (1.0 + 1e-9);
}

std::vector<TestFunction> naive_moment_slots() {
  const TestFunction naive = make_naive(1.0 / 3.0);
  return {naive, naive};
}

std::vector<TestFunction> mixed_moment_slots() {
  GeneratorSpec g;
  g.kind = GeneratorKind::kSinOfSquare;
  g.coefficients = {1.0};
  g.half_support = 0.125;
  return {make_from_generator(g), make_naive(0.25)};
}

Regime column_regime(TableColumn c) {
  return c == TableColumn::kMomentMixed ? Regime::kMockGaussian
                                        : Regime::kWithR;
}

std::vector<TableCell> reproduce_table(TableId which,
                                       const QuadratureSettings& settings,
                                       unsigned workers) {
  std::vector<ReferenceCell> refs;
  for (const ReferenceCell& c : reference_cells()) {
    if (c.table == which) refs.push_back(c);
  }
  bool needs_mixed = false;
  for (const ReferenceCell& c : refs) {
    needs_mixed |= c.column == TableColumn::kMomentMixed;
  }
  // Built once; the generator tabulation dominates construction cost.
  const std::vector<TestFunction> naive = naive_moment_slots();
  const std::vector<TestFunction> mixed =
      needs_mixed ? mixed_moment_slots() : std::vector<TestFunction>{};

  std::vector<TableCell> out(refs.size());
  parallel_for(refs.size(), workers, [&](std::size_t i) {
    const ReferenceCell& ref = refs[i];
    TableCell cell;
    cell.reference = ref;
    switch (ref.column) {
      case TableColumn::kLevel1:
        cell.bound = bound_level1(optimal_level1_reference(ref.family),
                                  ref.family, ref.rank);
        break;
      case TableColumn::kLevel2:
        cell.bound = bound_level2(optimal_level2_reference(ref.family),
                                  ref.family, ref.rank);
        break;
      case TableColumn::kMomentNaive:
        cell.bound = bound_moment(naive, ref.family, ref.rank, 2,
                                  column_regime(ref.column), settings);
        break;
      case TableColumn::kMomentMixed:
        cell.bound = bound_moment(mixed, ref.family, ref.rank, 2,
                                  column_regime(ref.column), settings);
        break;
    }
    cell.value = cell.bound.upper_bound;
    cell.rel_dev = (cell.value - ref.value) / ref.value;
    cell.tolerance = column_tolerance(ref.column);
    cell.pass = cell_agrees(cell.value, ref, cell.tolerance);
    out[i] = std::move(cell);
  });
  return out;
}

}  // namespace lowlying
