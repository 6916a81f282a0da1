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

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lowlying/bounds.hpp"
#include "lowlying/cli.hpp"
#include "lowlying/error.hpp"
#include "lowlying/rmt.hpp"
#include "lowlying/tables.hpp"

namespace lowlying::cli {
namespace {

using Record = nlohmann::ordered_json;

// Collects records; emitted once at the end so output order is fixed.
class RecordSink {
 public:
  void add(Record r) { rows_.push_back(std::move(r)); }

  void write_records(std::ostream& os) const {
    for (const Record& r : rows_) os << r.dump() << '\n';
  }

  void write_csv(std::ostream& os) const {
    std::vector<std::string> columns;
    for (const Record& r : rows_) {
      for (const auto& [key, _] : r.items()) {
        if (std::find(columns.begin(), columns.end(), key) == columns.end()) {
          columns.push_back(key);
        }
      }
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
      os << (i ? "," : "") << columns[i];
    }
    os << '\n';
    for (const Record& r : rows_) {
      for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) os << ',';
        if (r.contains(columns[i])) os << csv_field(r.at(columns[i]));
      }
      os << '\n';
    }
  }

 private:
  static std::string csv_field(const Record& v) {
    std::string text;
    if (v.is_null()) return text;
    if (v.is_string()) {
      text = v.get<std::string>();
    } else if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) text += ';';
        text += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
      }
    } else {
      text = v.dump();
    }
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + '"';
  }

  std::vector<Record> rows_;
};

Record optional_number(const std::optional<double>& v) {
  return v ? Record(*v) : Record(nullptr);
}

Record bound_record(const BoundResult& b) {
  Record r;
  r["kind"] = "bound";
  r["family"] = std::string(group_name(b.family));
  r["rank"] = b.rank;
  r["method"] = b.method.name();
  r["test_functions"] = b.test_functions;
  r["upper_bound"] = b.upper_bound;
  r["denominator"] = b.denominator;
  r["moment_value"] = optional_number(b.moment_value);
  r["expectation"] = optional_number(b.expectation);
  r["regime"] = b.regime ? Record(std::string(regime_name(*b.regime)))
                         : Record(nullptr);
  return r;
}

Record error_record(Command c, const Error& e) {
  Record r;
  r["kind"] = "error";
  r["command"] = std::string(command_name(c));
  r["code"] = std::string(error_code_name(e.code()));
  r["message"] = e.what();
  return r;
}

std::vector<TestFunction> parse_all(const RunConfig& config) {
  std::vector<TestFunction> out;
  for (const std::string& s : config.testfns) {
    out.push_back(parse_testfn(s, config.quadrature));
  }
  return out;
}

TestFunction default_naive(const RunConfig& config) {
  return make_naive(config.support.value_or(1.0 / 3.0));
}

double default_support_budget(const RunConfig& config, int order) {
  if (config.support) return *config.support;
  const double with_r = with_r_support_threshold(order);
  const double mock = mock_gaussian_support_threshold(order, config.weight_k);
  switch (config.regime) {
    case Regime::kWithR: return with_r;
    case Regime::kMockGaussian: return mock;
    case Regime::kAuto: break;
  }
  return std::max(with_r, mock);
}

// Runs `body`, turning module errors into error records.
template <typename F>
bool guarded(const RunConfig& config, RecordSink& sink, std::ostream& err,
             F&& body) {
  try {
    body();
    return true;
  } catch (const Error& e) {
    err << "error [" << error_code_name(e.code()) << "]: " << e.what() << '\n';
    sink.add(error_record(config.command, e));
    return false;
  }
}

int run_bound(const RunConfig& config, RecordSink& sink, std::ostream& err) {
  if (config.ranks.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "bound needs --rank or --ranks");
  }
  std::vector<TestFunction> tfs = parse_all(config);
  const bool explicit_tfs = !tfs.empty();
  int status = kExitOk;
  for (int rank : config.ranks) {
    const bool ok = guarded(config, sink, err, [&] {
      std::vector<Candidate> candidates;
      auto add_moment = [&](const Method& m) {
        Candidate c;
        c.method = m;
        c.test_functions =
            explicit_tfs ? tfs : std::vector<TestFunction>{default_naive(config)};
        c.weight_k = config.weight_k;
        c.regime = config.regime;
        candidates.push_back(std::move(c));
      };
      auto add_level = [&](const Method& m) {
        Candidate c;
        c.method = m;
        if (explicit_tfs) {
          c.test_functions = tfs;
        } else {
          c.reference = m.kind == MethodKind::kLevel1
                            ? optimal_level1_reference(config.family)
                            : optimal_level2_reference(config.family);
        }
        candidates.push_back(std::move(c));
      };
      if (config.method == "best") {
        Candidate l1;
        l1.method = Method::level1();
        l1.reference = optimal_level1_reference(config.family);
        Candidate l2;
        l2.method = Method::level2();
        l2.reference = optimal_level2_reference(config.family);
        candidates = {l1, l2};
        // One function fills both slots of the fourth moment.
        add_moment(Method::moment(
            tfs.size() > 1 ? static_cast<int>(2 * tfs.size()) : 4));
        sink.add(bound_record(best_bound(rank, config.family, candidates,
                                         config.quadrature)));
        return;
      }
      const Method m = parse_method(config.method);
      if (m.kind == MethodKind::kMoment) {
        add_moment(m);
      } else {
        add_level(m);
      }
      sink.add(bound_record(evaluate_candidate(candidates.front(), config.family,
                                               rank, config.quadrature)));
    });
    if (!ok) status = kExitError;
  }
  return status;
}

int run_moment(const RunConfig& config, RecordSink& sink, std::ostream& err) {
  std::vector<TestFunction> tfs = parse_all(config);
  if (tfs.empty()) tfs.push_back(default_naive(config));
  std::vector<std::vector<TestFunction>> requests;
  if (tfs.size() == 1) {
    const std::vector<int> orders =
        config.orders.empty() ? std::vector<int>{4} : config.orders;
    for (int n : orders) {
      if (n < 2) {
        throw Error(ErrorCode::kInvalidArgument, "moment orders must be >= 2");
      }
      requests.emplace_back(static_cast<std::size_t>(n), tfs.front());
    }
  } else {
    requests.push_back(tfs);
  }
  int status = kExitOk;
  for (const auto& list : requests) {
    const bool ok = guarded(config, sink, err, [&] {
      MomentRequest request;
      request.test_functions = list;
      request.family = config.family;
      request.weight_k = config.weight_k;
      request.regime = config.regime;
      const MomentResult m = centered_moment(request, config.quadrature);
      Record r;
      r["kind"] = "moment";
      r["family"] = std::string(group_name(config.family));
      r["order"] = list.size();
      std::vector<std::string> labels;
      for (const TestFunction& tf : list) labels.push_back(tf.label());
      r["test_functions"] = labels;
      r["regime"] = std::string(regime_name(m.regime));
      r["value"] = m.value;
      r["matching_sum"] = m.matching_sum;
      r["r_term"] = m.r_term;
      r["sign"] = m.sign_applied;
      sink.add(std::move(r));
    });
    if (!ok) status = kExitError;
  }
  return status;
}

int run_table(const RunConfig& config, RecordSink& sink, std::ostream& err) {
  std::vector<std::string> names = config.tables;
  if (names.empty()) names = {"T1", "T2", "T3", "T4", "T5"};
  int status = kExitOk;
  for (const std::string& name : names) {
    const bool ok = guarded(config, sink, err, [&] {
      const TableId id = parse_table_id(name);
      for (const TableCell& c :
           reproduce_table(id, config.quadrature, config.workers)) {
        Record r;
        r["kind"] = "table_cell";
        r["table"] = std::string(table_name(id));
        r["rank"] = c.reference.rank;
        r["family"] = std::string(group_name(c.reference.family));
        r["column"] = std::string(column_name(c.reference.column));
        r["value"] = c.value;
        r["paper_value"] = c.reference.value;
        r["printed"] = c.reference.printed;
        r["rel_dev"] = c.rel_dev;
        r["tolerance"] = c.tolerance;
        r["pass"] = c.pass;
        r["test_functions"] = c.bound.test_functions;
        sink.add(std::move(r));
        if (!c.pass && status == kExitOk) status = kExitCheckFailed;
      }
    });
    if (!ok) status = kExitError;
  }
  return status;
}

int run_optimize(const RunConfig& config, RecordSink& sink, std::ostream& err) {
  if (config.ranks.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "optimize needs --rank");
  }
  const Method method = parse_method(config.method);
  if (method.kind != MethodKind::kMoment) {
    throw Error(ErrorCode::kInvalidArgument,
                "optimize works on moment methods (moment4, moment2m:<m>)");
  }
  const int slots = method.order / 2;
  const double budget = default_support_budget(config, method.order);
  std::vector<std::string> basis_specs = config.basis;
  if (basis_specs.empty()) basis_specs = {"cos:4"};
  if (basis_specs.size() == 1) {
    basis_specs.assign(static_cast<std::size_t>(slots), basis_specs.front());
  }
  OptimizationProblem problem;
  problem.family = config.family;
  problem.moment_order = method.order;
  problem.support_budget = budget;
  problem.weight_k = config.weight_k;
  problem.regime = config.regime;
  for (const std::string& s : basis_specs) {
    problem.slots.push_back(parse_basis(s, budget, config.quadrature));
  }
  SearchSettings settings;
  settings.restarts = config.restarts;
  settings.seed = config.seed;
  settings.max_evals = config.max_evals;
  settings.simplex_tolerance = config.simplex_tolerance;
  settings.workers = config.workers;
  settings.quadrature = config.quadrature;

  int status = kExitOk;
  for (int rank : config.ranks) {
    const bool ok = guarded(config, sink, err, [&] {
      problem.rank = rank;
      const SearchResult result = search(problem, settings);
      for (const RestartTrace& t : result.trace) {
        Record r;
        r["kind"] = "optimize_trace";
        r["rank"] = rank;
        r["restart"] = t.restart;
        r["start"] = t.start;
        r["start_value"] = t.start_value;
        r["start_feasible"] = t.start_feasible;
        r["best"] = t.best;
        r["best_value"] = t.best_value;
        r["best_feasible"] = t.best_feasible;
        r["evaluations"] = t.evaluations;
        r["iterations"] = t.iterations;
        r["converged"] = t.converged;
        r["history"] = t.history;
        sink.add(std::move(r));
      }
      Record r;
      r["kind"] = "optimize_result";
      r["family"] = std::string(group_name(problem.family));
      r["rank"] = rank;
      r["order"] = problem.moment_order;
      r["support_budget"] = budget;
      r["regime"] = std::string(regime_name(problem.regime));
      std::vector<std::string> bases;
      for (const GeneratorBasis& b : problem.slots) bases.push_back(b.label());
      r["basis"] = bases;
      r["best_bound"] = result.best_bound;
      r["best_restart"] = result.best_restart;
      r["coefficients"] = result.coefficients;
      r["test_functions"] = result.test_functions;
      sink.add(std::move(r));
    });
    if (!ok) status = kExitError;
  }
  return status;
}

int run_rmt(const RunConfig& config, RecordSink& sink) {
  std::vector<TestFunction> tfs = parse_all(config);
  if (tfs.size() > 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "rmt-verify takes a single --testfn");
  }
  const TestFunction tf = tfs.empty() ? default_naive(config) : tfs.front();
  const std::vector<int> orders =
      config.orders.empty() ? std::vector<int>{2, 4} : config.orders;
  const int n_max = *std::max_element(orders.begin(), orders.end());
  if (*std::min_element(orders.begin(), orders.end()) < 2) {
    throw Error(ErrorCode::kInvalidArgument, "orders must be >= 2");
  }
  std::vector<double> constants = config.finite_size_c;
  if (constants.empty() && !config.calibration_path.empty()) {
    constants = load_finite_size_constants(config.calibration_path,
                                           config.family, orders);
  }

  EnsembleSpec spec;
  spec.group = config.family;
  spec.half_dim = config.half_dim;
  spec.samples = config.samples;
  spec.seed = config.seed;
  spec.workers = config.workers;
  spec.validate();
  const PredictedMoments predicted =
      predicted_moments(spec.group, tf, n_max, config.quadrature);
  const EmpiricalMoments empirical = empirical_moments(spec, tf, n_max);
  const auto checks =
      compare_moments(empirical, predicted, orders, constants, spec.half_dim);

  auto base = [&](const char* kind) {
    Record r;
    r["kind"] = kind;
    r["group"] = std::string(group_name(spec.group));
    r["N"] = spec.half_dim;
    r["samples"] = spec.samples;
    r["seed"] = spec.seed;
    r["testfn"] = tf.label();
    return r;
  };
  Record mean = base("rmt_mean");
  mean["empirical"] = empirical.mean;
  mean["predicted"] = predicted.mean;
  mean["std_error"] = empirical.mean_std_error;
  sink.add(std::move(mean));
  int status = kExitOk;
  for (const MomentCheck& c : checks) {
    Record r = base("rmt_check");
    r["order"] = c.order;
    r["empirical"] = c.empirical;
    r["predicted"] = c.predicted;
    r["std_error"] = c.std_error;
    r["z_score"] = c.z_score;
    r["allowance"] = c.allowance;
    r["pass"] = c.pass;
    sink.add(std::move(r));
    if (!c.pass) status = kExitCheckFailed;
  }
  return status;
}

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::kBound: return "bound";
    case Command::kMoment: return "moment";
    case Command::kTable: return "table";
    case Command::kOptimize: return "optimize";
    case Command::kRmtVerify: return "rmt-verify";
  }
  return "?";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::kBound, Command::kMoment, Command::kTable,
                    Command::kOptimize, Command::kRmtVerify}) {
    if (name == command_name(c)) return c;
  }
  throw Error(ErrorCode::kParse,
              "unknown command '" + std::string(name) +
                  "' (expected bound, moment, table, optimize, rmt-verify)");
}

void RunConfig::validate() const {
  quadrature.validate();
  for (int r : ranks) {
    if (r < 1) {
      throw Error(ErrorCode::kInvalidArgument, "ranks must be positive");
    }
  }
  if (method != "best") parse_method(method);
  if (weight_k < 1) {
    throw Error(ErrorCode::kInvalidArgument, "--weight-k must be >= 1");
  }
  if (support && !(*support > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "--support must be positive");
  }
  if (half_dim < 1) throw Error(ErrorCode::kInvalidArgument, "--N must be >= 1");
  if (samples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "--samples must be >= 1");
  }
  for (const std::string& s : testfns) parse_testfn(s, quadrature);
  for (const std::string& t : tables) parse_table_id(t);
  if (!out_path.empty()) {
    std::ofstream probe(out_path, std::ios::app);
    if (!probe) {
      throw Error(ErrorCode::kInvalidArgument,
                  "output path '" + out_path + "' is not writable");
    }
  }
}

std::vector<double> load_finite_size_constants(const std::string& path,
                                               SymmetryGroup group,
                                               const std::vector<int>& orders) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot read calibration file '" + path + "'");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, "calibration file: " + std::string(e.what()));
  }
  const std::string key(group_name(group));
  const nlohmann::json* table = nullptr;
  if (doc.contains("constants") && doc["constants"].contains(key)) {
    table = &doc["constants"][key];
  } else if (doc.contains(key)) {
    table = &doc[key];
  }
  if (table == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "calibration file has no constants for " + key);
  }
  std::vector<double> out;
  for (int order : orders) {
    const std::string o = std::to_string(order);
    if (!table->contains(o)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "calibration file has no constant for " + key + " order " + o);
    }
    out.push_back((*table)[o].get<double>());
  }
  return out;
}

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out,
                        std::ostream& err) {
  CLI::App app{
      "lowlying: order-of-vanishing bounds from centered moments of "
      "low-lying zero statistics"};
  app.set_config("--config", "",
                 "flat key=value file mirroring the long flags; flags win");

  RunConfig config;
  std::string command;
  std::vector<std::string> positional;
  std::string family = "so-even";
  std::string regime = "auto";
  std::string format = "records";
  std::vector<int> ranks;
  int rank = 0;
  std::string support;
  std::string tol_abs;
  std::string tol_rel;

  app.add_option("command", command,
                 "bound | moment | table | optimize | rmt-verify")
      ->required();
  app.add_option("tables", positional, "table ids for `table` (T1..T5)");
  app.add_option("--family,--group", family,
                 "so-even | so-odd | o | u | sp");
  app.add_option("--rank", rank, "rank r (order of vanishing)");
  app.add_option("--ranks", ranks, "comma-separated ranks")->delimiter(',');
  app.add_option("--method", config.method,
                 "level1 | level2 | moment4 | moment2m:<m> | best");
  app.add_option("--testfn", config.testfns,
                 "test-function spec; repeat for further slots")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--weight-k", config.weight_k, "weight k of the family");
  app.add_option("--support", support,
                 "default naive width, or the optimizer's support budget");
  app.add_option("--regime", regime, "auto | with_R | mock_gaussian");
  app.add_option("--seed", config.seed, "random seed");
  app.add_option("--samples", config.samples, "Monte Carlo sample count");
  app.add_option("--N", config.half_dim, "ensemble half-dimension N");
  app.add_option("--orders", config.orders, "comma-separated moment orders")
      ->delimiter(',');
  app.add_option("--basis", config.basis,
                 "optimizer slot basis; repeat per slot")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--restarts", config.restarts, "optimizer restarts");
  app.add_option("--max-evals", config.max_evals,
                 "objective evaluations per restart");
  app.add_option("--simplex-tol", config.simplex_tolerance,
                 "relative simplex spread at convergence");
  app.add_option("--finite-size-c", config.finite_size_c,
                 "finite-size constants C (allowance C/N), one per order")
      ->delimiter(',');
  app.add_option("--calibration", config.calibration_path,
                 "JSON file of calibrated finite-size constants");
  app.add_option("--workers", config.workers, "worker threads (0 = all)");
  app.add_option("--tol-abs", tol_abs, "quadrature absolute tolerance");
  app.add_option("--tol-rel", tol_rel, "quadrature relative tolerance");
  app.add_option("--max-subdivisions", config.quadrature.max_subdivisions,
                 "quadrature subdivision limit");
  app.add_option("--out", config.out_path, "output path (default stdout)");
  app.add_option("--format", format, "records | csv")
      ->check(CLI::IsMember({"records", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return {std::nullopt, app.exit(e, out, err) == 0 ? kExitOk : kExitError};
  }

  try {
    config.command = parse_command(command);
    config.family = parse_group(family);
    config.regime = parse_regime(regime);
    config.format = format == "csv" ? OutputFormat::kCsv : OutputFormat::kRecords;
    if (app.count("--rank")) config.ranks.push_back(rank);
    config.ranks.insert(config.ranks.end(), ranks.begin(), ranks.end());
    if (!support.empty()) config.support = parse_number(support);
    if (!tol_abs.empty()) config.quadrature.abs_tol = parse_number(tol_abs);
    if (!tol_rel.empty()) config.quadrature.rel_tol = parse_number(tol_rel);
    if (config.command == Command::kTable) {
      config.tables = positional;
    } else if (!positional.empty()) {
      throw Error(ErrorCode::kParse, "unexpected argument '" +
                                         positional.front() + "'");
    }
    config.validate();
  } catch (const Error& e) {
    err << "error [" << error_code_name(e.code()) << "]: " << e.what() << '\n';
    Record r;
    r["kind"] = "error";
    r["command"] = command;
    r["code"] = std::string(error_code_name(e.code()));
    r["message"] = e.what();
    out << r.dump() << '\n';
    return {std::nullopt, kExitError};
  }
  return {config, kExitOk};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RecordSink sink;
  int status = kExitOk;
  const bool ok = guarded(config, sink, err, [&] {
    switch (config.command) {
      case Command::kBound: status = run_bound(config, sink, err); break;
      case Command::kMoment: status = run_moment(config, sink, err); break;
      case Command::kTable: status = run_table(config, sink, err); break;
      case Command::kOptimize: status = run_optimize(config, sink, err); break;
      case Command::kRmtVerify: status = run_rmt(config, sink); break;
    }
  });
  if (!ok) status = kExitError;

  auto emit = [&](std::ostream& os, OutputFormat f) {
    if (f == OutputFormat::kCsv) {
      sink.write_csv(os);
    } else {
      sink.write_records(os);
    }
  };
  if (config.out_path.empty()) {
    emit(out, config.format);
    return status;
  }
  std::ofstream file(config.out_path, std::ios::trunc);
  emit(file, config.format);
  if (config.format == OutputFormat::kRecords) {
    std::ofstream mirror(config.out_path + ".csv", std::ios::trunc);
    sink.write_csv(mirror);
  }
  if (!file) {
    err << "error: failed writing " << config.out_path << '\n';
    return kExitError;
  }
  return status;
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  const ParseOutcome parsed = parse_args(argc, argv, out, err);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, out, err);
}

}  // namespace lowlying::cli
