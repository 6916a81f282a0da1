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
#include <cstdlib>
#include <sstream>

#include "lowlying/error.hpp"
#include "lowlying/tables.hpp"

namespace lowlying {
namespace detail {
std::string_view reference_tables_csv();
}  // namespace detail

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

double parse_double(const std::string& s, int line_no) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kParse, "reference line " + std::to_string(line_no) +
                                       ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string_view table_name(TableId t) {
  switch (t) {
    case TableId::kT1: return "T1";
    case TableId::kT2: return "T2";
    case TableId::kT3: return "T3";
    case TableId::kT4: return "T4";
    case TableId::kT5: return "T5";
  }
  return "?";
}

TableId parse_table_id(std::string_view name) {
  for (TableId t : {TableId::kT1, TableId::kT2, TableId::kT3, TableId::kT4,
                    TableId::kT5}) {
    if (name == table_name(t)) return t;
  }
  throw Error(ErrorCode::kParse,
              "unknown table '" + std::string(name) + "' (expected T1..T5)");
}

std::string_view column_name(TableColumn c) {
  switch (c) {
    case TableColumn::kLevel1: return "level1";
    case TableColumn::kLevel2: return "level2";
    case TableColumn::kMomentNaive: return "moment4_naive";
    case TableColumn::kMomentMixed: return "moment4_mixed";
  }
  return "?";
}

TableColumn parse_column(std::string_view name) {
  for (TableColumn c : {TableColumn::kLevel1, TableColumn::kLevel2,
                        TableColumn::kMomentNaive, TableColumn::kMomentMixed}) {
    if (name == column_name(c)) return c;
  }
  throw Error(ErrorCode::kParse, "unknown column '" + std::string(name) + "'");
}

double last_digit_unit(std::string_view printed) {
  std::string_view mantissa = printed;
  int exponent = 0;
  const std::size_t e = printed.find_first_of("eE");
  if (e != std::string_view::npos) {
    mantissa = printed.substr(0, e);
    exponent = std::atoi(std::string(printed.substr(e + 1)).c_str());
  }
  const std::size_t dot = mantissa.find('.');
  const int decimals =
      dot == std::string_view::npos
          ? 0
          : static_cast<int>(mantissa.size() - dot - 1);
  return std::pow(10.0, exponent - decimals);
}

std::vector<ReferenceCell> parse_reference_csv(std::string_view text) {
  std::vector<ReferenceCell> cells;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto f = split(line, ',');
    if (header) {
      header = false;
      if (f.size() != 5 || f[0] != "table" || f[4] != "printed") {
        throw Error(ErrorCode::kParse, "reference header must be "
                                       "table,rank,family,column,printed");
      }
      continue;
    }
    if (f.size() != 5) {
      throw Error(ErrorCode::kParse,
                  "reference line " + std::to_string(line_no) +
                      ": expected 5 fields");
    }
    ReferenceCell cell;
    cell.table = parse_table_id(f[0]);
    cell.rank = static_cast<int>(parse_double(f[1], line_no));
    cell.family = parse_group(f[2]);
    cell.column = parse_column(f[3]);
    cell.printed = f[4];
    cell.value = parse_double(f[4], line_no);
    cell.last_digit_unit = last_digit_unit(f[4]);
    cells.push_back(std::move(cell));
  }
  return cells;
}

const std::vector<ReferenceCell>& reference_cells() {
  static const std::vector<ReferenceCell> cells =
      parse_reference_csv(detail::reference_tables_csv());
  return cells;
}

std::optional<ReferenceCell> find_reference(TableId table, int rank,
                                            TableColumn column) {
  for (const ReferenceCell& c : reference_cells()) {
    if (c.table == table && c.rank == rank && c.column == column) return c;
  }
  return std::nullopt;
}

}  // namespace lowlying
