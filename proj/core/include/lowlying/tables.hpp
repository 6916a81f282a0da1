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

#ifndef LOWLYING_TABLES_HPP_
#define LOWLYING_TABLES_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lowlying/bounds.hpp"
#include "lowlying/kernels.hpp"
#include "lowlying/quadrature.hpp"

namespace lowlying {

enum class TableId { kT1, kT2, kT3, kT4, kT5 };

enum class TableColumn {
  kLevel1,
  kLevel2,
  kMomentNaive,  // four copies of Naive(1/3), with_R regime
  kMomentMixed,  // sin(x^2) generator pair + Naive(1/4) pair, mock-Gaussian
};

std::string_view table_name(TableId t);
TableId parse_table_id(std::string_view name);  // "T1".."T5"
std::string_view column_name(TableColumn c);
TableColumn parse_column(std::string_view name);

// One printed reference cell. `printed` is kept verbatim so the size of its
// last printed digit is recoverable.
struct ReferenceCell {
  TableId table = TableId::kT1;
  int rank = 0;
  SymmetryGroup family = SymmetryGroup::kSOeven;
  TableColumn column = TableColumn::kLevel1;
  std::string printed;
  double value = 0.0;
  double last_digit_unit = 0.0;
};

// 10^(exponent of the last printed digit): "0.0004279" -> 1e-7,
// "4.49988e-6" -> 1e-11.
double last_digit_unit(std::string_view printed);

// Parses the reference CSV (header: table,rank,family,column,printed).
std::vector<ReferenceCell> parse_reference_csv(std::string_view text);

// Cells of the checked-in reference file, parsed once.
const std::vector<ReferenceCell>& reference_cells();

std::optional<ReferenceCell> find_reference(TableId table, int rank,
                                            TableColumn column);

// Relative tolerance per column: 5e-5 for the level columns (five
// significant figures), 1e-4 for the naive moment column, 1e-3 for the
// mixed one.
double column_tolerance(TableColumn c);

// A cell agrees when its relative deviation is within tolerance, or when
// the absolute difference is at most one unit of the last printed digit
// (some cells are truncated rather than rounded).
bool cell_agrees(double value, const ReferenceCell& ref, double tolerance);

struct TableCell {
  ReferenceCell reference;
  double value = 0.0;
  double rel_dev = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  BoundResult bound;
};

// Recomputes every cell of the table, row-parallel. Moment columns come
// from first principles; level columns from the reference expectations.
std::vector<TableCell> reproduce_table(TableId which,
                                       const QuadratureSettings& settings = {},
                                       unsigned workers = 0);

// The slot lists behind the two moment columns.
std::vector<TestFunction> naive_moment_slots();
std::vector<TestFunction> mixed_moment_slots();
Regime column_regime(TableColumn c);

}  // namespace lowlying

#endif  // LOWLYING_TABLES_HPP_
