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
#include <string>

#include <gtest/gtest.h>

#include "lowlying/error.hpp"
#include "lowlying/tables.hpp"

namespace lowlying {
namespace {

constexpr TableId kTables[] = {TableId::kT1, TableId::kT2, TableId::kT3,
                               TableId::kT4, TableId::kT5};

TEST(ReferenceData, ShapeOfCheckedInFile) {
  const auto& cells = reference_cells();
  EXPECT_EQ(cells.size(), 108u);
  std::map<TableId, int> per_table;
  for (const ReferenceCell& c : cells) {
    ++per_table[c.table];
    EXPECT_GT(c.value, 0.0);
    EXPECT_GT(c.last_digit_unit, 0.0);
    EXPECT_EQ(c.rank % 2 == 0, c.family == SymmetryGroup::kSOeven) << c.printed;
  }
  EXPECT_EQ(per_table[TableId::kT1], 18);
  EXPECT_EQ(per_table[TableId::kT2], 15);
  EXPECT_EQ(per_table[TableId::kT3], 28);
  EXPECT_EQ(per_table[TableId::kT4], 15);
  EXPECT_EQ(per_table[TableId::kT5], 32);
  const auto c = find_reference(TableId::kT2, 20, TableColumn::kMomentNaive);
  ASSERT_TRUE(c.has_value());
  EXPECT_DOUBLE_EQ(c->value, 4.49988e-6);
  EXPECT_FALSE(find_reference(TableId::kT2, 21, TableColumn::kLevel1).has_value());
}

TEST(ReferenceData, LastDigitUnit) {
  EXPECT_DOUBLE_EQ(last_digit_unit("0.0004279"), 1e-7);
  EXPECT_DOUBLE_EQ(last_digit_unit("4.49988e-6"), 1e-11);
  EXPECT_DOUBLE_EQ(last_digit_unit("0.222908"), 1e-6);
  EXPECT_DOUBLE_EQ(last_digit_unit("3.7858e-9"), 1e-13);
}

TEST(ReferenceData, ParserRejectsMalformedInput) {
  EXPECT_THROW((void)parse_reference_csv("table,rank\nT1,5\n"), Error);
  EXPECT_THROW((void)parse_reference_csv(
                   "table,rank,family,column,printed\nT9,5,so-odd,level1,0.1\n"),
               Error);
  const auto ok = parse_reference_csv(
      "table,rank,family,column,printed\nT4,7,so-odd,level2,0.0299746\n");
  ASSERT_EQ(ok.size(), 1u);
  EXPECT_EQ(ok[0].column, TableColumn::kLevel2);
}

TEST(ReferenceData, AgreementRule) {
  ReferenceCell ref;
  ref.printed = "0.0003640";
  ref.value = 0.000364;
  ref.last_digit_unit = 1e-7;
  // Rel. deviation 1.4e-4 but within one unit of the truncated last digit.
  EXPECT_TRUE(cell_agrees(0.00036405, ref, 1e-4));
  EXPECT_FALSE(cell_agrees(0.0003642, ref, 1e-4));
  EXPECT_DOUBLE_EQ(column_tolerance(TableColumn::kMomentNaive), 1e-4);
  EXPECT_DOUBLE_EQ(column_tolerance(TableColumn::kMomentMixed), 1e-3);
  for (TableId t : kTables) EXPECT_EQ(parse_table_id(table_name(t)), t);
  EXPECT_EQ(column_regime(TableColumn::kMomentNaive), Regime::kWithR);
  EXPECT_EQ(column_regime(TableColumn::kMomentMixed), Regime::kMockGaussian);
}

TEST(Tables, EveryReferenceCellReproduces) {
  std::size_t total = 0;
  for (TableId t : kTables) {
    for (const TableCell& cell : reproduce_table(t)) {
      ++total;
      EXPECT_TRUE(cell.pass) << table_name(t) << " r=" << cell.reference.rank << " "
                             << column_name(cell.reference.column) << " got "
                             << cell.value << " printed " << cell.reference.printed;
      EXPECT_NEAR(cell.rel_dev,
                  (cell.value - cell.reference.value) / cell.reference.value, 1e-15);
    }
  }
  EXPECT_EQ(total, reference_cells().size());
}

TEST(Tables, NamedExamples) {
  auto value = [](TableId t, int r, TableColumn c) {
    for (const TableCell& cell : reproduce_table(t)) {
      if (cell.reference.rank == r && cell.reference.column == c) return cell.value;
    }
    ADD_FAILURE() << "missing cell";
    return 0.0;
  };
  EXPECT_NEAR(value(TableId::kT2, 50, TableColumn::kMomentNaive) / 7.13387e-8, 1, 1e-4);
  EXPECT_NEAR(value(TableId::kT5, 999, TableColumn::kMomentMixed) / 3.02656e-13, 1, 1e-3);
  EXPECT_NEAR(value(TableId::kT3, 2020, TableColumn::kMomentNaive) / 2.01718e-14, 1, 1e-4);
}

TEST(Tables, IndependentOfWorkerCount) {
  const auto one = reproduce_table(TableId::kT5, {}, 1);
  const auto four = reproduce_table(TableId::kT5, {}, 4);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].value, four[i].value);
    EXPECT_EQ(one[i].reference.rank, four[i].reference.rank);
  }
}

TEST(Tables, LevelColumnsAreRowConstant) {
  for (TableId t : kTables) {
    for (const TableCell& cell : reproduce_table(t)) {
      const int r = cell.reference.rank;
      const SymmetryGroup g = cell.reference.family;
      if (cell.reference.column == TableColumn::kLevel1) {
        EXPECT_NEAR(cell.value * r, optimal_level1_reference(g).value, 1e-12);
      } else if (cell.reference.column == TableColumn::kLevel2) {
        EXPECT_NEAR(cell.value * level2_coefficient(r),
                    optimal_level2_reference(g).value, 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace lowlying
