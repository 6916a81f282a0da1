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


#include <cstdio>
#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>
#include <unistd.h>

#include "lowlying/cli.hpp"
#include "lowlying/error.hpp"

#ifndef LOWLYING_CALIBRATION_FILE
#error "LOWLYING_CALIBRATION_FILE must point at the calibration fixture"
#endif

namespace lowlying::cli {
namespace {

using nlohmann::json;

struct Outcome {
  int status = 0;
  std::string out;
  std::string err;
  std::vector<json> records() const {
    std::vector<json> rs;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) rs.push_back(json::parse(line));
    }
    return rs;
  }
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "lowlying");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.status = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("lowlying_cli_test_" + std::to_string(::getpid()) + "_" + name);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(Cli, Numbers) {
  EXPECT_DOUBLE_EQ(parse_number("1/3"), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(parse_number("0.25"), 0.25);
  EXPECT_DOUBLE_EQ(parse_number("1e-3"), 1e-3);
  EXPECT_DOUBLE_EQ(parse_number("-3/4"), -0.75);
  for (const char* bad : {"", "abc", "1/0", "1/", "2x", "1/2/3"}) {
    EXPECT_EQ(code_of([&] { (void)parse_number(bad); }), ErrorCode::kParse) << bad;
  }
}

TEST(Cli, TestFunctionGrammarRoundTrips) {
  for (const char* spec : {"naive:v=1/3", "gen:sinx2:half=1/8", "gen:sinx2:2:half=0.1",
                           "gen:cos:1,0.5,-0.25:half=1/8", "gen:poly:1,2,-3:half=0.2",
                           "gen:tab:0.1,1,0.4:half=0.3", "2.5*naive:v=1/4"}) {
    const TestFunction tf = parse_testfn(spec);
    const TestFunction again = parse_testfn(tf.label());
    EXPECT_EQ(again.label(), tf.label()) << spec;
    for (double x : {0.0, 0.7, 3.1}) {
      EXPECT_DOUBLE_EQ(again.phi(x), tf.phi(x)) << spec;
    }
  }
  EXPECT_DOUBLE_EQ(parse_testfn("2.5*naive:v=1/4").amplitude(), 2.5);
  EXPECT_DOUBLE_EQ(parse_testfn("naive:v=1/3").support_bound(), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(parse_testfn("gen:sinx2:half=1/8").support_bound(), 0.25);
}

TEST(Cli, TestFunctionGrammarErrors) {
  for (const char* bad : {"naive", "naive:w=1", "naive:v=0", "gen:cos:half=1/8",
                          "gen:wave:1:half=1", "gen:cos:1,x:half=1", "gen:sinx2:half=-1"}) {
    try {
      (void)parse_testfn(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_NE(std::string(e.what()).find(bad), std::string::npos)
          << bad << ": " << e.what();
    }
  }
  EXPECT_EQ(code_of([] { (void)parse_testfn("gen:poly:0,1:half=1/8"); }),
            ErrorCode::kDegenerateGenerator);
  EXPECT_EQ(code_of([] { (void)parse_testfn("gen:wave:1:half=1"); }), ErrorCode::kParse);
}

TEST(Cli, BasisGrammar) {
  const GeneratorBasis cos = parse_basis("cos:4:lo=-2:hi=2", 0.25);
  EXPECT_EQ(cos.kind, BasisKind::kCosineSeries);
  EXPECT_EQ(cos.dimension, 4);
  EXPECT_DOUBLE_EQ(cos.half_support, 0.125);
  EXPECT_EQ(cos.lower, std::vector<double>(4, -2.0));
  const GeneratorBasis init = parse_basis("poly:2:init=1,0.5", 0.25);
  EXPECT_EQ(init.start_point(), (std::vector<double>{1.0, 0.5}));
  EXPECT_EQ(parse_basis("sinx2", 0.25).dimension, 1);
  const GeneratorBasis fixed = parse_basis("fixed:naive:v=1/4", 0.25);
  EXPECT_EQ(fixed.kind, BasisKind::kFixed);
  EXPECT_EQ(fixed.dimension, 0);
  EXPECT_DOUBLE_EQ(fixed.support(), 0.25);
  EXPECT_THROW((void)parse_basis("cos:0", 0.25), Error);
  EXPECT_THROW((void)parse_basis("spline:3", 0.25), Error);
  EXPECT_THROW((void)parse_basis("cos:2:lo=1:hi=0", 0.25), Error);
}

TEST(Cli, ArgumentParsing) {
  const char* argv[] = {"lowlying", "bound",      "--family", "so-odd",
                        "--rank",   "49",         "--testfn", "naive:v=1/3",
                        "--regime", "with_R",     "--workers", "2"};
  std::ostringstream out, err;
  const ParseOutcome p = parse_args(12, argv, out, err);
  ASSERT_TRUE(p.config.has_value()) << err.str();
  EXPECT_EQ(p.config->command, Command::kBound);
  EXPECT_EQ(p.config->family, SymmetryGroup::kSOodd);
  EXPECT_EQ(p.config->ranks, std::vector<int>{49});
  EXPECT_EQ(p.config->regime, Regime::kWithR);
  EXPECT_EQ(p.config->workers, 2u);
  EXPECT_EQ(p.config->testfns, std::vector<std::string>{"naive:v=1/3"});

  const char* help[] = {"lowlying", "--help"};
  const ParseOutcome h = parse_args(2, help, out, err);
  EXPECT_FALSE(h.config.has_value());
  EXPECT_EQ(h.exit_code, kExitOk);

  const char* bad[] = {"lowlying", "frobnicate"};
  const ParseOutcome b = parse_args(2, bad, out, err);
  EXPECT_FALSE(b.config.has_value());
  EXPECT_EQ(b.exit_code, kExitError);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto cfg = temp_path("run.ini");
  {
    std::ofstream f(cfg);
    f << "family=so-even\nrank=20\ntestfn=naive:v=1/3\nregime=with_R\nseed=5\n";
  }
  const Outcome o = invoke({"bound", "--config", cfg.string(), "--rank", "50"});
  std::filesystem::remove(cfg);
  ASSERT_EQ(o.status, kExitOk) << o.err;
  const auto rs = o.records();
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0]["rank"], 50);
  EXPECT_NEAR(rs[0]["upper_bound"].get<double>() / 7.13387e-8, 1.0, 1e-4);
}

TEST(Cli, BoundRecordSchema) {
  const Outcome o = invoke({"bound", "--family", "so-even", "--ranks", "20,50",
                            "--testfn", "naive:v=1/3", "--regime", "with_R"});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  const auto rs = o.records();
  ASSERT_EQ(rs.size(), 2u);
  for (const char* key : {"kind", "family", "rank", "method", "test_functions",
                          "upper_bound", "denominator", "moment_value", "regime"}) {
    EXPECT_TRUE(rs[0].contains(key)) << key;
  }
  EXPECT_EQ(rs[0]["kind"], "bound");
  EXPECT_EQ(rs[0]["method"], "moment4");
  EXPECT_EQ(rs[0]["regime"], "with_R");
  EXPECT_NEAR(rs[0]["upper_bound"].get<double>() / 4.49988e-6, 1.0, 1e-4);
}

TEST(Cli, ErrorsBecomeRecordsAndExitTwo) {
  const Outcome parity = invoke({"bound", "--family", "so-even", "--rank", "21",
                                 "--testfn", "naive:v=1/3"});
  EXPECT_EQ(parity.status, kExitError);
  const auto rs = parity.records();
  ASSERT_FALSE(rs.empty());
  EXPECT_EQ(rs.back()["kind"], "error");
  EXPECT_EQ(rs.back()["code"], "parity_mismatch");

  const Outcome parse = invoke({"bound", "--rank", "20", "--testfn", "naive:v=0"});
  EXPECT_EQ(parse.status, kExitError);

  const Outcome support = invoke({"bound", "--rank", "20", "--testfn", "naive:v=1/2",
                                  "--regime", "with_R"});
  EXPECT_EQ(support.status, kExitError);
  EXPECT_EQ(support.records().back()["code"], "support_violation");
}

TEST(Cli, MomentCommand) {
  const Outcome o = invoke({"moment", "--family", "so-odd", "--testfn", "naive:v=1/3",
                            "--orders", "4", "--regime", "with_R"});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  const auto rs = o.records();
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0]["kind"], "moment");
  EXPECT_NEAR(rs[0]["value"].get<double>(), 1.0 / 3.0 - 1.0 / 5040.0, 1e-10);
  EXPECT_EQ(rs[0]["sign"], -1);
}

TEST(Cli, TableCommandPassesAndMirrorsCsv) {
  const auto out = temp_path("t2.jsonl");
  const Outcome o = invoke({"table", "T2", "--out", out.string()});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  std::ifstream jf(out);
  int lines = 0;
  for (std::string line; std::getline(jf, line);) {
    const json r = json::parse(line);
    EXPECT_EQ(r["kind"], "table_cell");
    EXPECT_TRUE(r["pass"].get<bool>()) << line;
    ++lines;
  }
  EXPECT_EQ(lines, 15);
  std::ifstream cf(out.string() + ".csv");
  std::string header;
  ASSERT_TRUE(std::getline(cf, header));
  EXPECT_NE(header.find("rel_dev"), std::string::npos) << header;
  int rows = 0;
  for (std::string line; std::getline(cf, line);) ++rows;
  EXPECT_EQ(rows, 15);
  std::filesystem::remove(out);
  std::filesystem::remove(out.string() + ".csv");
}

TEST(Cli, CsvFormatOnStdout) {
  const Outcome o = invoke({"table", "T4", "--format", "csv"});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  std::istringstream in(o.out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("kind,", 0), 0u) << header;
  int rows = 0;
  for (std::string line; std::getline(in, line);) rows += !line.empty();
  EXPECT_EQ(rows, 15);
}

TEST(Cli, OptimizeWithFixedSlots) {
  const Outcome o = invoke({"optimize", "--rank", "20", "--support", "1/3",
                            "--regime", "with_R", "--basis", "fixed:naive:v=1/3",
                            "--basis", "fixed:naive:v=1/3"});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  const auto rs = o.records();
  ASSERT_FALSE(rs.empty());
  EXPECT_EQ(rs.front()["kind"], "optimize_trace");
  EXPECT_EQ(rs.back()["kind"], "optimize_result");
  EXPECT_NEAR(rs.back()["best_bound"].get<double>() / 4.49988e-6, 1.0, 1e-4);
}

TEST(Cli, RmtVerifySmallRun) {
  const Outcome o = invoke({"rmt-verify", "--group", "so-even", "--N", "6",
                            "--samples", "400", "--seed", "3", "--testfn",
                            "naive:v=1/3", "--orders", "2,4", "--calibration",
                            LOWLYING_CALIBRATION_FILE});
  ASSERT_NE(o.status, kExitError) << o.err;
  const auto rs = o.records();
  ASSERT_EQ(rs.size(), 3u);
  EXPECT_EQ(rs[0]["kind"], "rmt_mean");
  EXPECT_EQ(rs[1]["kind"], "rmt_check");
  EXPECT_EQ(rs[1]["order"], 2);
  EXPECT_EQ(rs[2]["order"], 4);
  EXPECT_GT(rs[1]["allowance"].get<double>(), 3 * rs[1]["std_error"].get<double>());
}

TEST(Cli, CalibrationFixtureLoads) {
  const std::vector<int> orders{2, 3, 4};
  for (SymmetryGroup g : {SymmetryGroup::kSOeven, SymmetryGroup::kSOodd}) {
    const auto c = load_finite_size_constants(LOWLYING_CALIBRATION_FILE, g, orders);
    ASSERT_EQ(c.size(), 3u);
    for (double v : c) {
      EXPECT_GT(v, 0.0);
      EXPECT_LT(v, 1.0);
    }
  }
  EXPECT_THROW((void)load_finite_size_constants("/nonexistent/file.json",
                                                SymmetryGroup::kSOeven, orders),
               Error);
}

}  // namespace
}  // namespace lowlying::cli
