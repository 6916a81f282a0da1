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

#ifndef LOWLYING_CLI_HPP_
#define LOWLYING_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lowlying/kernels.hpp"
#include "lowlying/moments.hpp"
#include "lowlying/optimize.hpp"
#include "lowlying/quadrature.hpp"
#include "lowlying/testfunc.hpp"

namespace lowlying::cli {

enum class Command { kBound, kMoment, kTable, kOptimize, kRmtVerify };
enum class OutputFormat { kRecords, kCsv };

std::string_view command_name(Command c);
Command parse_command(std::string_view name);

// Exit statuses of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitError = 2;

struct RunConfig {
  Command command = Command::kBound;
  SymmetryGroup family = SymmetryGroup::kSOeven;
  std::vector<int> ranks;
  std::string method = "moment4";
  std::vector<std::string> testfns;
  int weight_k = 2;
  std::optional<double> support;
  Regime regime = Regime::kAuto;
  std::uint64_t seed = 0;
  std::uint64_t samples = 200000;
  int half_dim = 40;
  std::vector<int> orders;
  std::vector<std::string> tables;
  std::vector<std::string> basis;
  int restarts = 16;
  int max_evals = 2000;
  double simplex_tolerance = 1e-12;
  std::vector<double> finite_size_c;
  std::string calibration_path;
  unsigned workers = 0;
  QuadratureSettings quadrature;
  std::string out_path;  // empty: stdout
  OutputFormat format = OutputFormat::kRecords;

  // Every spec string parses, numeric ranges hold, the output is writable.
  void validate() const;
};

// Decimal or p/q rational, e.g. "0.25", "1/3", "1e-3".
double parse_number(std::string_view text);

// Grammar:
//   [<c>*]naive:v=<number>
//   [<c>*]gen:sinx2[:<a>]:half=<number>
//   [<c>*]gen:{cos|poly|tab}:<n>,<n>,...:half=<number>
// Inverse of TestFunction::label().
TestFunction parse_testfn(std::string_view spec,
                          const QuadratureSettings& settings = {});

// Grammar:
//   {cos|poly}[:<dim>][:lo=<x>][:hi=<x>][:init=<x>,<x>,...]
//   sinx2[:lo=<x>][:hi=<x>][:init=<x>]
//   fixed:<testfn spec>
// Generator slots get half_support = support_budget / 2.
GeneratorBasis parse_basis(std::string_view spec, double support_budget,
                           const QuadratureSettings& settings = {});

// Finite-size constants keyed by group and order from a calibration file
// (JSON object {"so-even": {"2": c2, "4": c4, ...}, ...}).
std::vector<double> load_finite_size_constants(const std::string& path,
                                               SymmetryGroup group,
                                               const std::vector<int>& orders);

struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = kExitOk;  // meaningful when config is empty
};

// Parses argv; prints help or usage errors to `out`/`err` itself.
ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out,
                        std::ostream& err);

// Executes the command, writing records (or CSV) to the configured sink.
// Returns kExitCheckFailed when a hard check fails and kExitError when a
// module error was reported.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

}  // namespace lowlying::cli

#endif  // LOWLYING_CLI_HPP_
