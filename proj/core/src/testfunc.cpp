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

#include "lowlying/testfunc.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "lowlying/error.hpp"

namespace lowlying {
namespace {

constexpr double kPi = std::numbers::pi;

// Nodes and weights of the 16-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre16 {
  std::array<double, 16> nodes{};
  std::array<double, 16> weights{};

  GaussLegendre16() {
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussLegendre16& gl16() {
  static const GaussLegendre16 rule;
  return rule;
}

// Composite 16-point Gauss-Legendre over [a, b] split into `panels` pieces.
template <typename F>
double composite_gl(F&& f, double a, double b, int panels) {
  const auto& rule = gl16();
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    double piece = 0.0;
    for (int i = 0; i < 16; ++i) {
      piece += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    }
    total += 0.5 * width * piece;
  }
  return total;
}

// sin(z)/z
double sinc_plain(double z) {
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf.data(), end);
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

// Integral of (x - y)^k from lo to hi, expanded as polynomial coefficients
// in t is awkward; instead shift the polynomial p(t - y) explicitly.
std::vector<double> shifted_polynomial(const std::vector<double>& c,
                                       double y) {
  // p(t - y) = sum_k c_k (t - y)^k = sum_j d_j t^j.
  const std::size_t n = c.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double binom = 1.0;
    double power = 1.0;  // (-y)^(k - j) built from j = k downward
    for (std::size_t step = 0; step <= k; ++step) {
      const std::size_t j = k - step;
      d[j] += c[k] * binom * power;
      binom = binom * static_cast<double>(j) / static_cast<double>(step + 1);
      power *= -y;
    }
  }
  return d;
}

double integrate_monomials(const std::vector<double>& c, double lo,
                           double hi) {
  double total = 0.0;
  double p_hi = hi;
  double p_lo = lo;
  for (std::size_t k = 0; k < c.size(); ++k) {
    total += c[k] * (p_hi - p_lo) / static_cast<double>(k + 1);
    p_hi *= hi;
    p_lo *= lo;
  }
  return total;
}

// int_lo^hi cos(beta t + gamma) dt
double integrate_cos_affine(double beta, double gamma, double lo, double hi) {
  if (beta == 0.0) return (hi - lo) * std::cos(gamma);
  return (std::sin(beta * hi + gamma) - std::sin(beta * lo + gamma)) / beta;
}

}  // namespace

// ---------------------------------------------------------------------------
// GeneratorSpec

double GeneratorSpec::operator()(double t) const {
  const double h = half_support;
  if (!(std::abs(t) < h)) return 0.0;
  switch (kind) {
    case GeneratorKind::kSinOfSquare: {
      const double a = coefficients.empty() ? 1.0 : coefficients[0];
      return std::sin(a * t * t);
    }
    case GeneratorKind::kPolynomial: {
      double acc = 0.0;
      for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        acc = acc * t + *it;
      }
      return acc;
    }
    case GeneratorKind::kCosineSeries: {
      double acc = 0.0;
      for (std::size_t k = 0; k < coefficients.size(); ++k) {
        acc += coefficients[k] * std::cos(static_cast<double>(k) * kPi * t / h);
      }
      return acc;
    }
    case GeneratorKind::kTabulated: {
      const auto intervals = static_cast<double>(coefficients.size() - 1);
      const double u = (t + h) / (2.0 * h) * intervals;
      const auto i = std::min(static_cast<std::size_t>(u),
                              coefficients.size() - 2);
      const double frac = u - static_cast<double>(i);
      return coefficients[i] * (1.0 - frac) + coefficients[i + 1] * frac;
    }
  }
  return 0.0;
}

void GeneratorSpec::validate() const {
  if (!(half_support > 0.0) || !std::isfinite(half_support)) {
    throw Error(ErrorCode::kInvalidArgument,
                "generator half-support must be positive and finite");
  }
  for (double c : coefficients) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "generator coefficients must be finite");
    }
  }
  const bool all_zero = std::all_of(coefficients.begin(), coefficients.end(),
                                    [](double c) { return c == 0.0; });
  switch (kind) {
    case GeneratorKind::kSinOfSquare:
      if (coefficients.size() > 1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "sin-of-square generator takes at most one coefficient");
      }
      if (!coefficients.empty() && coefficients[0] == 0.0) {
        throw Error(ErrorCode::kDegenerateGenerator,
                    "generator is identically zero");
      }
      break;
    case GeneratorKind::kTabulated:
      if (coefficients.size() < 2) {
        throw Error(ErrorCode::kInvalidArgument,
                    "tabulated generator needs at least two samples");
      }
      [[fallthrough]];
    case GeneratorKind::kPolynomial:
    case GeneratorKind::kCosineSeries:
      if (coefficients.empty() || all_zero) {
        throw Error(ErrorCode::kDegenerateGenerator,
                    "generator is identically zero");
      }
      break;
  }
}

std::string GeneratorSpec::label() const {
  const std::string half = ":half=" + format_number(half_support);
  switch (kind) {
    case GeneratorKind::kSinOfSquare:
      if (coefficients.empty() || coefficients[0] == 1.0) {
        return "gen:sinx2" + half;
      }
      return "gen:sinx2:" + format_number(coefficients[0]) + half;
    case GeneratorKind::kPolynomial:
      return "gen:poly:" + join_numbers(coefficients) + half;
    case GeneratorKind::kCosineSeries:
      return "gen:cos:" + join_numbers(coefficients) + half;
    case GeneratorKind::kTabulated:
      return "gen:tab:" + join_numbers(coefficients) + half;
  }
  return "gen:?";
}

// ---------------------------------------------------------------------------
// Models

struct TestFunction::Model {
  virtual ~Model() = default;
  virtual double phi(double x) const = 0;
  // Called with y >= 0.
  virtual double phihat(double y) const = 0;
  virtual double phi0() const = 0;
  virtual double phihat0() const = 0;
  virtual double support() const = 0;
  virtual PowerLawDecay envelope() const = 0;
  virtual std::string label() const = 0;
  virtual std::size_t nodes() const { return 0; }
};

namespace {

class NaiveModel final : public TestFunction::Model {
 public:
  explicit NaiveModel(double v) : v_(v) {}

  double width() const { return v_; }

  double phi(double x) const override {
    const double s = sinc_plain(kPi * v_ * x);
    return s * s;
  }
  double phihat(double y) const override {
    return y < v_ ? (1.0 - y / v_) / v_ : 0.0;
  }
  double phi0() const override { return 1.0; }
  double phihat0() const override { return 1.0 / v_; }
  double support() const override { return v_; }
  PowerLawDecay envelope() const override {
    return PowerLawDecay{1.0 / (kPi * kPi * v_ * v_), 2.0};
  }
  std::string label() const override {
    return "naive:v=" + format_number(v_);
  }

 private:
  double v_;
};

// Uniform table of phihat on [0, support] with local cubic interpolation.
struct PhihatTable {
  double step = 0.0;
  std::vector<double> values;

  double operator()(double y) const {
    const auto count = values.size();
    const double u = y / step;
    auto i = static_cast<std::ptrdiff_t>(u);
    const auto last = static_cast<std::ptrdiff_t>(count) - 4;
    const std::ptrdiff_t i0 = std::clamp<std::ptrdiff_t>(i - 1, 0, last);
    const double s = u - static_cast<double>(i0);
    const double f0 = values[i0];
    const double f1 = values[i0 + 1];
    const double f2 = values[i0 + 2];
    const double f3 = values[i0 + 3];
    // Lagrange cubic through nodes 0, 1, 2, 3 evaluated at s.
    const double l0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
    const double l1 = s * (s - 2.0) * (s - 3.0) / 2.0;
    const double l2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
    const double l3 = s * (s - 1.0) * (s - 2.0) / 6.0;
    return f0 * l0 + f1 * l1 + f2 * l2 + f3 * l3;
  }

  // 4 int_0^S y table(y)^2 dy, exact for the piecewise cubic interpolant.
  double self_sigma2() const {
    static constexpr std::array<double, 4> kNodes = {
        -0.861136311594052575224, -0.339981043584856264803,
        0.339981043584856264803, 0.861136311594052575224};
    static constexpr std::array<double, 4> kWeights = {
        0.347854845137453857374, 0.652145154862546142627,
        0.652145154862546142627, 0.347854845137453857374};
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      const double mid = (static_cast<double>(i) + 0.5) * step;
      double piece = 0.0;
      for (int q = 0; q < 4; ++q) {
        const double y = mid + 0.5 * step * kNodes[q];
        const double v = (*this)(y);
        piece += kWeights[q] * y * v * v;
      }
      total += 0.5 * step * piece;
    }
    return 4.0 * total;
  }
};

class GeneratorModel final : public TestFunction::Model {
 public:
  GeneratorModel(GeneratorSpec spec, const QuadratureSettings& settings)
      : spec_(std::move(spec)), support_(2.0 * spec_.half_support) {
    spec_.validate();
    settings.validate();
    const double h = spec_.half_support;

    const double mass = composite_gl(
        [this](double t) { return std::abs(spec_(t)); }, -h, h, 64);
    integral_ = compute_integral(settings, mass);
    if (!(std::abs(integral_) > 1e-12 * mass)) {
      throw Error(ErrorCode::kDegenerateGenerator,
                  "generator integrates to zero, so phi(0) = 0: " +
                      spec_.label());
    }
    energy_ = autocorrelation_direct(0.0);
    variation_ = total_variation();
    if (needs_table()) build_table(settings);
  }

  const GeneratorSpec& spec() const { return spec_; }

  double phi(double x) const override {
    const auto [re, im] = transform(x);
    return re * re + im * im;
  }
  double phihat(double y) const override {
    if (y >= support_) return 0.0;
    if (!table_.values.empty()) return table_(y);
    return autocorrelation_direct(y);
  }
  double phi0() const override { return integral_ * integral_; }
  double phihat0() const override { return energy_; }
  double support() const override { return support_; }
  PowerLawDecay envelope() const override {
    // |g^(x)| <= TV(g) / (2 pi |x|) with g extended by zero.
    const double c = variation_ / (2.0 * kPi);
    return PowerLawDecay{c * c, 2.0};
  }
  std::string label() const override { return spec_.label(); }
  std::size_t nodes() const override { return table_.values.size(); }

 private:
  bool needs_table() const {
    return spec_.kind == GeneratorKind::kSinOfSquare ||
           spec_.kind == GeneratorKind::kTabulated;
  }

  std::vector<double> sample_grid() const {
    const double h = spec_.half_support;
    const std::size_t n = spec_.coefficients.size();
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) {
      grid[i] = -h + 2.0 * h * static_cast<double>(i) /
                         static_cast<double>(n - 1);
    }
    return grid;
  }

  double compute_integral(const QuadratureSettings& settings,
                          double mass) const {
    const double h = spec_.half_support;
    const auto& c = spec_.coefficients;
    switch (spec_.kind) {
      case GeneratorKind::kCosineSeries:
        return 2.0 * h * c[0];
      case GeneratorKind::kPolynomial:
        return integrate_monomials(c, -h, h);
      case GeneratorKind::kTabulated: {
        double total = 0.0;
        const double dt = 2.0 * h / static_cast<double>(c.size() - 1);
        for (std::size_t i = 0; i + 1 < c.size(); ++i) {
          total += 0.5 * dt * (c[i] + c[i + 1]);
        }
        return total;
      }
      case GeneratorKind::kSinOfSquare: {
        QuadratureSettings local = settings;
        local.abs_tol = settings.abs_tol * mass;
        return integrate([this](double t) { return spec_(t); }, -h, h, local)
            .value;
      }
    }
    return 0.0;
  }

  // phihat(y) = int g(t) g(t - y) dt over [-H + y, H], for 0 <= y < 2H.
  double autocorrelation_direct(double y) const {
    const double h = spec_.half_support;
    const double lo = -h + y;
    const double hi = h;
    if (!(hi > lo)) return 0.0;
    const auto& c = spec_.coefficients;
    switch (spec_.kind) {
      case GeneratorKind::kCosineSeries: {
        double total = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) {
          const double aj = static_cast<double>(j) * kPi / h;
          for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[j] == 0.0 || c[k] == 0.0) continue;
            const double ak = static_cast<double>(k) * kPi / h;
            // cos(aj t) cos(ak (t - y)) = [cos((aj+ak)t - ak y)
            //                             + cos((aj-ak)t + ak y)] / 2
            total += 0.5 * c[j] * c[k] *
                     (integrate_cos_affine(aj + ak, -ak * y, lo, hi) +
                      integrate_cos_affine(aj - ak, ak * y, lo, hi));
          }
        }
        return total;
      }
      case GeneratorKind::kPolynomial: {
        const std::vector<double> shifted = shifted_polynomial(c, y);
        std::vector<double> product(c.size() + shifted.size() - 1, 0.0);
        for (std::size_t j = 0; j < c.size(); ++j) {
          for (std::size_t k = 0; k < shifted.size(); ++k) {
            product[j + k] += c[j] * shifted[k];
          }
        }
        return integrate_monomials(product, lo, hi);
      }
      case GeneratorKind::kSinOfSquare: {
        const double a = c.empty() ? 1.0 : c[0];
        const int panels =
            4 + static_cast<int>(std::ceil(std::abs(a) * h * h));
        return composite_gl(
            [this, y](double t) { return spec_(t) * spec_(t - y); }, lo, hi,
            panels);
      }
      case GeneratorKind::kTabulated: {
        // Piecewise quadratic between the kinks of g(t) and g(t - y).
        std::vector<double> breaks = {lo, hi};
        for (double t : sample_grid()) {
          if (t > lo && t < hi) breaks.push_back(t);
          if (t + y > lo && t + y < hi) breaks.push_back(t + y);
        }
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end(),
                                 [](double a, double b) {
                                   return std::abs(a - b) < 1e-15;
                                 }),
                     breaks.end());
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
          total += composite_gl(
              [this, y](double t) { return spec_(t) * spec_(t - y); },
              breaks[i], breaks[i + 1], 1);
        }
        return total;
      }
    }
    return 0.0;
  }

  // g^(x) = int g(t) e^{2 pi i x t} dt as (real, imaginary).
  std::pair<double, double> transform(double x) const {
    const double h = spec_.half_support;
    const auto& c = spec_.coefficients;
    if (spec_.kind == GeneratorKind::kCosineSeries) {
      const double b = 2.0 * kPi * x;
      double total = 0.0;
      for (std::size_t k = 0; k < c.size(); ++k) {
        const double a = static_cast<double>(k) * kPi / h;
        total += c[k] * h * (sinc_plain((a - b) * h) + sinc_plain((a + b) * h));
      }
      return {total, 0.0};
    }
    // Keep each panel within half an oscillation of the kernel.
    const int oscillation_panels =
        static_cast<int>(std::ceil(4.0 * h * std::abs(x))) + 2;
    double re = 0.0;
    double im = 0.0;
    auto accumulate = [&](double lo, double hi, int panels) {
      re += composite_gl(
          [&](double t) { return spec_(t) * std::cos(2.0 * kPi * x * t); },
          lo, hi, panels);
      im += composite_gl(
          [&](double t) { return spec_(t) * std::sin(2.0 * kPi * x * t); },
          lo, hi, panels);
    };
    if (spec_.kind == GeneratorKind::kTabulated) {
      const std::vector<double> grid = sample_grid();
      const auto intervals = static_cast<int>(grid.size() - 1);
      const int per = std::max(1, (oscillation_panels + intervals - 1) / intervals);
      for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        accumulate(grid[i], grid[i + 1], per);
      }
    } else {
      accumulate(-h, h, oscillation_panels);
    }
    return {re, im};
  }

  double total_variation() const {
    const double h = spec_.half_support;
    const double inside = 1.0 - 1e-12;
    double variation =
        std::abs(spec_(-h * inside)) + std::abs(spec_(h * inside));
    if (spec_.kind == GeneratorKind::kTabulated) {
      const auto& c = spec_.coefficients;
      for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        variation += std::abs(c[i + 1] - c[i]);
      }
      return variation;
    }
    constexpr int kSteps = 20000;
    double prev = spec_(-h * inside);
    for (int i = 1; i <= kSteps; ++i) {
      const double t = -h * inside + 2.0 * h * inside * i / kSteps;
      const double cur = spec_(t);
      variation += std::abs(cur - prev);
      prev = cur;
    }
    // Grid sampling can only under-estimate the variation of a smooth g.
    return variation * (1.0 + 1e-3);
  }

  void fill_nodes(std::size_t count, std::size_t stride_from_previous) {
    // Reuse the previous table's values at shared nodes.
    std::vector<double> values(count);
    const double step = support_ / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
      if (stride_from_previous > 0 && i % stride_from_previous == 0) {
        values[i] = table_.values[i / stride_from_previous];
      } else if (i + 1 == count) {
        values[i] = 0.0;
      } else {
        values[i] = autocorrelation_direct(static_cast<double>(i) * step);
      }
    }
    table_.step = step;
    table_.values = std::move(values);
  }

  void build_table(const QuadratureSettings& settings) {
    constexpr std::size_t kInitialNodes = 4097;
    constexpr std::size_t kMaxNodes = (std::size_t{1} << 18) + 1;
    constexpr double kAgreement = 1e-10;
    fill_nodes(kInitialNodes, 0);
    double previous = table_.self_sigma2();
    while (true) {
      const std::size_t next = 2 * table_.values.size() - 1;
      if (next > kMaxNodes) {
        throw QuadratureError(
            "phihat tabulation did not stabilise sigma^2 for " +
                spec_.label(),
            previous, std::abs(previous) * kAgreement);
      }
      fill_nodes(next, 2);
      const double current = table_.self_sigma2();
      const double tol = std::max(kAgreement * std::abs(current),
                                  settings.abs_tol * energy_ * energy_);
      if (std::abs(current - previous) <= tol) break;
      previous = current;
    }
  }

  GeneratorSpec spec_;
  double support_;
  double integral_ = 0.0;
  double energy_ = 0.0;
  double variation_ = 0.0;
  PhihatTable table_;
};

}  // namespace

// ---------------------------------------------------------------------------
// TestFunction

TestFunction TestFunction::naive(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidArgument,
                "naive test function needs v > 0, got " + format_number(v));
  }
  return TestFunction(std::make_shared<NaiveModel>(v), 1.0);
}

TestFunction TestFunction::from_generator(const GeneratorSpec& g,
                                          const QuadratureSettings& settings) {
  return TestFunction(std::make_shared<GeneratorModel>(g, settings), 1.0);
}

TestFunction::Variant TestFunction::variant() const {
  return dynamic_cast<const NaiveModel*>(model_.get()) != nullptr
             ? Variant::kNaive
             : Variant::kGenerator;
}

double TestFunction::naive_width() const {
  const auto* naive = dynamic_cast<const NaiveModel*>(model_.get());
  if (naive == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, label() + " is not naive");
  }
  return naive->width();
}

const GeneratorSpec& TestFunction::generator() const {
  const auto* gen = dynamic_cast<const GeneratorModel*>(model_.get());
  if (gen == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                label() + " is not generator-backed");
  }
  return gen->spec();
}

double TestFunction::phi(double x) const { return scale_ * model_->phi(x); }

double TestFunction::phihat(double y) const {
  return scale_ * model_->phihat(std::abs(y));
}

double TestFunction::phi0() const { return scale_ * model_->phi0(); }
double TestFunction::phihat0() const { return scale_ * model_->phihat0(); }
double TestFunction::support_bound() const { return model_->support(); }

TestFunction TestFunction::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::kInvalidArgument,
                "test functions may only be scaled by a positive factor");
  }
  return TestFunction(model_, scale_ * c);
}

PowerLawDecay TestFunction::decay_envelope() const {
  PowerLawDecay envelope = model_->envelope();
  envelope.coefficient *= scale_;
  return envelope;
}

std::size_t TestFunction::tabulation_nodes() const { return model_->nodes(); }

std::string TestFunction::label() const {
  if (scale_ == 1.0) return model_->label();
  return format_number(scale_) + "*" + model_->label();
}

TestFunction make_naive(double v) { return TestFunction::naive(v); }

TestFunction make_from_generator(const GeneratorSpec& g,
                                 const QuadratureSettings& settings) {
  return TestFunction::from_generator(g, settings);
}

double sigma2(const TestFunction& a, const TestFunction& b,
              const QuadratureSettings& settings) {
  const double top = std::min(a.support_bound(), b.support_bound());
  // |phihat(y)| <= phihat(0), so normalising makes abs_tol meaningful for
  // functions of any amplitude.
  const double norm = a.phihat0() * b.phihat0();
  auto integrand = [&](double y) {
    return y * a.phihat(y) * b.phihat(y) / norm;
  };
  const QuadratureResult r = integrate(integrand, 0.0, top, settings);
  return 4.0 * norm * r.value;
}

double one_level_mean(const TestFunction& tf) {
  return tf.phihat0() + 0.5 * tf.phi0();
}

int min_rank(const TestFunction& tf) {
  const double ratio = tf.phihat0() / tf.phi0() + 0.5;
  return static_cast<int>(std::floor(ratio)) + 1;
}

}  // namespace lowlying
