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

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "lowlying/cli.hpp"
#include "lowlying/error.hpp"

namespace lowlying::cli {
namespace {

constexpr std::string_view kTestfnGrammar =
    "expected [<c>*]naive:v=<number> | [<c>*]gen:sinx2[:<a>]:half=<number> | "
    "[<c>*]gen:{cos|poly|tab}:<n>,<n>,...:half=<number>; numbers are "
    "decimals or p/q";

constexpr std::string_view kBasisGrammar =
    "expected {cos|poly}[:<dim>][:lo=<x>][:hi=<x>][:init=<x>,...] | "
    "sinx2[:lo=<x>][:hi=<x>][:init=<x>] | fixed:<testfn spec>";

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

bool consume_prefix(std::string_view& text, std::string_view prefix) {
  if (text.substr(0, prefix.size()) != prefix) return false;
  text.remove_prefix(prefix.size());
  return true;
}

[[noreturn]] void fail(std::string_view spec, const std::string& why,
                       std::string_view grammar) {
  throw Error(ErrorCode::kParse, "cannot parse '" + std::string(spec) +
                                     "': " + why + " (" +
                                     std::string(grammar) + ")");
}

double strict_double(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw Error(ErrorCode::kParse, "empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw Error(ErrorCode::kParse, "'" + s + "' is not a finite number");
  }
  return v;
}

std::vector<double> number_list(std::string_view text) {
  std::vector<double> out;
  for (std::string_view part : split(text, ',')) out.push_back(parse_number(part));
  return out;
}

}  // namespace

double parse_number(std::string_view text) {
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) return strict_double(text);
  const double p = strict_double(text.substr(0, slash));
  const double q = strict_double(text.substr(slash + 1));
  if (q == 0.0) {
    throw Error(ErrorCode::kParse,
                "'" + std::string(text) + "' has a zero denominator");
  }
  return p / q;
}

TestFunction parse_testfn(std::string_view spec,
                          const QuadratureSettings& settings) {
  std::string_view rest = spec;
  double scale = 1.0;
  if (const std::size_t star = rest.find('*'); star != std::string_view::npos) {
    try {
      scale = parse_number(rest.substr(0, star));
    } catch (const Error& e) {
      fail(spec, e.what(), kTestfnGrammar);
    }
    rest.remove_prefix(star + 1);
  }

  TestFunction tf = [&] {
    if (consume_prefix(rest, "naive:v=")) {
      double v = 0.0;
      try {
        v = parse_number(rest);
      } catch (const Error& e) {
        fail(spec, e.what(), kTestfnGrammar);
      }
      if (!(v > 0.0)) fail(spec, "naive width v must be positive", kTestfnGrammar);
      return make_naive(v);
    }
    if (!consume_prefix(rest, "gen:")) {
      fail(spec, "unknown test-function family", kTestfnGrammar);
    }
    const auto parts = split(rest, ':');
    if (parts.size() < 2 || parts.back().substr(0, 5) != "half=") {
      fail(spec, "generator specs end with :half=<number>", kTestfnGrammar);
    }
    GeneratorSpec g;
    try {
      g.half_support = parse_number(parts.back().substr(5));
      const std::string_view kind = parts.front();
      if (kind == "sinx2") {
        g.kind = GeneratorKind::kSinOfSquare;
        if (parts.size() == 3) {
          g.coefficients = {parse_number(parts[1])};
        } else if (parts.size() != 2) {
          fail(spec, "sinx2 takes at most one coefficient", kTestfnGrammar);
        } else {
          g.coefficients = {1.0};
        }
      } else if (kind == "cos" || kind == "poly" || kind == "tab") {
        g.kind = kind == "cos"    ? GeneratorKind::kCosineSeries
                 : kind == "poly" ? GeneratorKind::kPolynomial
                                  : GeneratorKind::kTabulated;
        if (parts.size() != 3) {
          fail(spec, "expected one comma-separated coefficient list",
               kTestfnGrammar);
        }
        g.coefficients = number_list(parts[1]);
      } else {
        fail(spec, "unknown generator kind '" + std::string(kind) + "'",
             kTestfnGrammar);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParse &&
          std::string_view(e.what()).find("cannot parse") == 0) {
        throw;
      }
      fail(spec, e.what(), kTestfnGrammar);
    }
    try {
      return make_from_generator(g, settings);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kDegenerateGenerator ||
          e.code() == ErrorCode::kInvalidArgument) {
        throw Error(e.code(), "test function '" + std::string(spec) +
                                  "' rejected: " + e.what());
      }
      throw;
    }
  }();
  return scale == 1.0 ? tf : tf.scaled(scale);
}

GeneratorBasis parse_basis(std::string_view spec, double support_budget,
                           const QuadratureSettings& settings) {
  std::string_view rest = spec;
  if (consume_prefix(rest, "fixed:")) {
    return fixed_basis(parse_testfn(rest, settings));
  }
  const auto parts = split(rest, ':');
  const std::string_view kind = parts.front();
  GeneratorBasis b;
  const double half = support_budget / 2.0;
  std::size_t next = 1;
  try {
    if (kind == "cos" || kind == "poly") {
      int dim = 4;
      if (parts.size() > 1 && parts[1].find('=') == std::string_view::npos) {
        const double d = parse_number(parts[1]);
        if (d != std::floor(d) || d < 1 || d > 64) {
          fail(spec, "dimension must be an integer in [1, 64]", kBasisGrammar);
        }
        dim = static_cast<int>(d);
        next = 2;
      }
      b = kind == "cos" ? cosine_basis(dim, half) : polynomial_basis(dim, half);
    } else if (kind == "sinx2") {
      b = sinx2_basis(half);
    } else {
      fail(spec, "unknown basis kind '" + std::string(kind) + "'",
           kBasisGrammar);
    }
    for (; next < parts.size(); ++next) {
      std::string_view p = parts[next];
      if (consume_prefix(p, "lo=")) {
        b.lower.assign(b.dimension, parse_number(p));
      } else if (consume_prefix(p, "hi=")) {
        b.upper.assign(b.dimension, parse_number(p));
      } else if (consume_prefix(p, "init=")) {
        b.initial = number_list(p);
      } else {
        fail(spec, "unknown basis field '" + std::string(p) + "'",
             kBasisGrammar);
      }
    }
  } catch (const Error& e) {
    if (std::string_view(e.what()).find("cannot parse") == 0) throw;
    fail(spec, e.what(), kBasisGrammar);
  }
  b.validate();
  return b;
}

}  // namespace lowlying::cli
