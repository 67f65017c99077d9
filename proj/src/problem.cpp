#include "degenfv/problem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <utility>

#include "degenfv/error.hpp"

namespace degenfv {

namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Shape flipped(Shape s) {
  switch (s) {
    case Shape::kNondecreasing: return Shape::kNonincreasing;
    case Shape::kNonincreasing: return Shape::kNondecreasing;
    case Shape::kPeak: return Shape::kValley;
    case Shape::kValley: return Shape::kPeak;
    case Shape::kGeneric: return Shape::kGeneric;
  }
  return Shape::kGeneric;
}

// 16-point Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration
// on P_16.
struct GaussLegendre16 {
  std::array<double, 16> nodes{};
  std::array<double, 16> weights{};

  GaussLegendre16() {
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
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

const GaussLegendre16& gauss16() {
  static const GaussLegendre16 rule;
  return rule;
}

std::vector<double> uniform_samples(double lo, double hi, std::size_t n) {
  std::vector<double> s(n);
  for (std::size_t j = 0; j < n; ++j) {
    s[j] = (j + 1 == n) ? hi : lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n - 1);
  }
  return s;
}

// Max adjacent slope of the points (x_j, y_j) with x sorted and x_j distinct.
double max_adjacent_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double best = 0.0;
  for (std::size_t j = 1; j < x.size(); ++j) {
    best = std::max(best, std::abs(y[j] - y[j - 1]) / (x[j] - x[j - 1]));
  }
  return best;
}

}  // namespace

ScalarFn::ScalarFn(std::string name, Rule rule, double lipschitz, Shape shape,
                   double turning_point)
    : name_(std::move(name)),
      rule_(std::move(rule)),
      lipschitz_(lipschitz),
      shape_(shape),
      turning_point_(turning_point) {}

namespace fns {

ScalarFn zero() {
  return ScalarFn("zero", [](double) { return 0.0; }, 0.0, Shape::kNondecreasing);
}

ScalarFn identity() {
  return ScalarFn("identity", [](double u) { return u; }, 1.0, Shape::kNondecreasing);
}

ScalarFn linear(double slope) {
  return ScalarFn("linear(" + fmt_num(slope) + ")", [slope](double u) { return slope * u; },
                  std::abs(slope), slope >= 0.0 ? Shape::kNondecreasing : Shape::kNonincreasing);
}

ScalarFn affine(double slope, double offset) {
  return ScalarFn("affine(" + fmt_num(slope) + "," + fmt_num(offset) + ")",
                  [slope, offset](double u) { return slope * u + offset; }, std::abs(slope),
                  slope >= 0.0 ? Shape::kNondecreasing : Shape::kNonincreasing);
}

ScalarFn burgers(double u_max) {
  return ScalarFn("burgers", [](double u) { return 0.5 * u * u; }, u_max, Shape::kValley, 0.0);
}

ScalarFn lwr() {
  return ScalarFn(
      "lwr", [](double u) { return (u >= 0.0 && u <= 1.0) ? u * (1.0 - u) : 0.0; }, 1.0,
      Shape::kPeak, 0.5);
}

ScalarFn threshold(double u_c) {
  return ScalarFn("threshold(" + fmt_num(u_c) + ")",
                  [u_c](double u) { return u > u_c ? u - u_c : 0.0; }, 1.0,
                  Shape::kNondecreasing);
}

ScalarFn scaled(double factor, const ScalarFn& g) {
  const Shape shape = factor == 0.0   ? Shape::kNondecreasing
                      : factor > 0.0 ? g.shape()
                                     : flipped(g.shape());
  return ScalarFn("scaled(" + fmt_num(factor) + "," + g.name() + ")",
                  [factor, g](double u) { return factor * g(u); },
                  std::abs(factor) * g.lipschitz(), shape, g.turning_point());
}

}  // namespace fns

InitialData InitialData::constant(double value) {
  return piecewise_constant({-std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity()},
                            {value});
}

InitialData InitialData::piecewise_constant(std::vector<double> breakpoints,
                                            std::vector<double> values) {
  if (values.empty() || breakpoints.size() != values.size() + 1 ||
      !std::is_sorted(breakpoints.begin(), breakpoints.end())) {
    throw Error(ErrorKind::kInvalidSpec, "piecewise-constant data needs sorted breakpoints, one more than values");
  }
  InitialData d;
  d.breakpoints_ = std::move(breakpoints);
  d.values_ = std::move(values);
  return d;
}

InitialData InitialData::function(std::function<double(double)> rule) {
  InitialData d;
  d.rule_ = std::move(rule);
  return d;
}

double InitialData::operator()(double x) const {
  if (rule_) return rule_(x);
  // Half-open pieces; points past the last breakpoint take the last value.
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  if (it == breakpoints_.begin()) return values_.front();
  const auto k = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return values_[std::min(k, values_.size() - 1)];
}

double InitialData::integral(double lo, double hi) const {
  if (!rule_) {
    double total = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k) {
      const double left = std::max(lo, breakpoints_[k]);
      const double right = std::min(hi, breakpoints_[k + 1]);
      if (right > left) total += values_[k] * (right - left);
    }
    return total;
  }
  constexpr int kPanels = 4;
  const auto& gl = gauss16();
  const double width = (hi - lo) / kPanels;
  double total = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    const double mid = lo + (p + 0.5) * width;
    double panel = 0.0;
    for (int q = 0; q < 16; ++q) panel += gl.weights[q] * rule_(mid + 0.5 * width * gl.nodes[q]);
    total += 0.5 * width * panel;
  }
  return total;
}

void validate(const ProblemSpec& spec, std::size_t n_samples) {
  const auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::kInvalidSpec, spec.name + ": " + why);
  };
  const auto& d = spec.diffusion;
  if (!(spec.domain.hi > spec.domain.lo)) fail("domain must satisfy a < b_end");
  if (!(spec.horizon >= 0.0) || !std::isfinite(spec.horizon)) fail("horizon must be finite and >= 0");
  if (!(d.u_max > 0.0)) fail("u_max must be positive");
  if (!(d.u_c >= 0.0 && d.u_c <= d.u_max)) fail("u_c must lie in [0, u_max]");
  if (n_samples < 2) fail("need at least two samples");

  const auto s = uniform_samples(0.0, d.u_max, n_samples);
  const double spacing = d.u_max / static_cast<double>(n_samples - 1);
  const auto check_fn = [&](const ScalarFn& g) {
    double prev = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double v = g(s[j]);
      if (!std::isfinite(v)) fail(g.name() + " is not finite at " + fmt_num(s[j]));
      if (j > 0) {
        const double slope = std::abs(v - prev) / (s[j] - s[j - 1]);
        if (slope > g.lipschitz() * (1.0 + 1e-8) + 1e-12) {
          fail(g.name() + " exceeds its Lipschitz constant near " + fmt_num(s[j]));
        }
      }
      prev = v;
    }
  };
  check_fn(spec.f);
  check_fn(d.phi);
  check_fn(spec.boundary.b);

  double prev_phi = 0.0;
  double prev_b = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double phi = d.phi(s[j]);
    const double b = spec.boundary.b(s[j]);
    if (s[j] <= d.u_c && std::abs(phi) > 1e-12) fail("phi must vanish on [0, u_c]");
    if (j > 0) {
      if (s[j - 1] >= d.u_c && !(phi > prev_phi)) fail("phi must be strictly increasing on [u_c, u_max]");
      if (std::abs(phi - prev_phi) > d.phi.lipschitz() * spacing * (1.0 + 1e-8) + 1e-12) {
        fail("phi has a jump near " + fmt_num(s[j]));
      }
      if (b < prev_b - 1e-12) fail("b must be non-decreasing");
    }
    if (spec.boundary.beta && std::abs(b - (*spec.boundary.beta)(phi)) > 1e-12) {
      fail("b differs from beta o phi at " + fmt_num(s[j]));
    }
    prev_phi = phi;
    prev_b = b;
  }

  for (double x : uniform_samples(spec.domain.lo, spec.domain.hi, n_samples)) {
    const double v = spec.u0(x);
    if (!(v >= 0.0 && v <= d.u_max)) fail("u0 leaves [0, u_max] at x = " + fmt_num(x));
  }
}

BetaTable::BetaTable(std::vector<double> phi_values, std::vector<double> b_values)
    : xs_(std::move(phi_values)), ys_(std::move(b_values)) {
  if (xs_.empty() || xs_.size() != ys_.size()) {
    throw Error(ErrorKind::kNoBeta, "beta table needs matching non-empty knots");
  }
  for (std::size_t j = 1; j < xs_.size(); ++j) {
    if (!(xs_[j] > xs_[j - 1])) throw Error(ErrorKind::kNoBeta, "beta knots must be increasing");
  }
  lipschitz_ = max_adjacent_slope(xs_, ys_);
}

double BetaTable::operator()(double phi_value) const {
  if (xs_.size() == 1) return ys_.front();
  std::size_t j;
  if (phi_value <= xs_.front()) {
    j = 1;
  } else if (phi_value >= xs_.back()) {
    j = xs_.size() - 1;
  } else {
    j = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), phi_value) - xs_.begin());
  }
  if (phi_value == xs_[j]) return ys_[j];
  if (phi_value == xs_[j - 1]) return ys_[j - 1];
  const double t = (phi_value - xs_[j - 1]) / (xs_[j] - xs_[j - 1]);
  return ys_[j - 1] + t * (ys_[j] - ys_[j - 1]);
}

bool BetaTable::non_decreasing() const {
  for (std::size_t j = 1; j < ys_.size(); ++j) {
    if (ys_[j] < ys_[j - 1] - 1e-12) return false;
  }
  return true;
}

ScalarFn BetaTable::as_fn() const {
  const double lip = lipschitz_;
  return ScalarFn("beta-table", [table = *this](double x) { return table(x); }, lip,
                  non_decreasing() ? Shape::kNondecreasing : Shape::kGeneric);
}

H1Result check_h1(const ProblemSpec& spec) {
  const double f0 = spec.f(0.0);
  const double b0 = spec.boundary.b(0.0);
  return {std::abs(f0) <= 1e-12 && std::abs(b0) <= 1e-12, f0, b0};
}

namespace {

BetaTable reconstruct_beta_impl(const ProblemSpec& spec, std::size_t n_samples) {
  const auto& d = spec.diffusion;
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n_samples);
  for (double s : uniform_samples(0.0, d.u_max, n_samples)) {
    pts.emplace_back(d.phi(s), spec.boundary.b(s));
  }
  std::stable_sort(pts.begin(), pts.end(),
                   [](const auto& l, const auto& r) { return l.first < r.first; });
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t j = 0;
  while (j < pts.size()) {
    std::size_t k = j;
    double lo = pts[j].second;
    double hi = pts[j].second;
    while (k < pts.size() && pts[k].first == pts[j].first) {
      lo = std::min(lo, pts[k].second);
      hi = std::max(hi, pts[k].second);
      ++k;
    }
    if (hi - lo > 1e-12) {
      throw Error(ErrorKind::kInconsistentB,
                  "b takes values " + fmt_num(lo) + " and " + fmt_num(hi) +
                      " where phi = " + fmt_num(pts[j].first));
    }
    xs.push_back(pts[j].first);
    ys.push_back(pts[j].second);
    j = k;
  }
  return BetaTable(std::move(xs), std::move(ys));
}

}  // namespace

BetaTable reconstruct_beta(const ProblemSpec& spec, std::size_t n_samples) {
  if (n_samples < 2) throw Error(ErrorKind::kInvalidSpec, "beta reconstruction needs samples");
  return reconstruct_beta_impl(spec, n_samples);
}

H2Result check_h2(const ProblemSpec& spec, std::size_t n_samples) {
  if (n_samples < 100) throw Error(ErrorKind::kInvalidSpec, "check_h2 needs at least 100 samples");
  const auto& d = spec.diffusion;
  H2Result out{false, 0.0, 0.0, std::nullopt, {}};

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double s : uniform_samples(0.0, d.u_max, n_samples)) {
    if (s > d.u_c) break;
    const double b = spec.boundary.b(s);
    lo = std::min(lo, b);
    hi = std::max(hi, b);
  }
  out.flat_variation = hi >= lo ? hi - lo : 0.0;
  if (out.flat_variation > 1e-12) {
    out.reason = "b is not constant on [0, u_c] where phi vanishes";
    return out;
  }

  try {
    BetaTable table = reconstruct_beta_impl(spec, n_samples);
    // A Lipschitz beta gives sampled slopes that settle under refinement;
    // slopes that keep growing mean the ratio is unbounded.
    const double coarse = reconstruct_beta_impl(spec, std::max<std::size_t>(n_samples / 4, 2)).lipschitz();
    out.beta_lipschitz = table.lipschitz();
    if (!table.non_decreasing()) {
      out.reason = "reconstructed beta is decreasing somewhere";
    } else if (out.beta_lipschitz > 1.5 * coarse + 1e-12) {
      out.reason = "slope ratio grows under refinement (beta not Lipschitz)";
    } else {
      out.pass = true;
    }
    out.beta = std::move(table);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kInconsistentB) throw;
    out.reason = e.what();
  }
  return out;
}

H3Result check_h3(const ProblemSpec& spec) {
  const double u_max = spec.diffusion.u_max;
  const double b_top = spec.boundary.b(u_max);
  const double f_top = std::abs(spec.f(u_max));
  return {b_top >= f_top - 1e-12, b_top - f_top};
}

NondegeneracyResult check_nondegeneracy(const ProblemSpec& spec, double window, double tol) {
  const double u_c = spec.diffusion.u_c;
  if (u_c <= 0.0) return {true, 0.0};
  if (window <= 0.0) window = u_c / 20.0;

  constexpr std::size_t kCells = 4000;
  const double h = u_c / static_cast<double>(kCells);
  std::vector<double> vals(kCells + 1);
  for (std::size_t j = 0; j <= kCells; ++j) vals[j] = spec.f(h * static_cast<double>(j));

  // A run of flat second differences centred at j0..j1 means f is affine on
  // [s_{j0-1}, s_{j1+1}].
  std::size_t best = 0;
  std::size_t run = 0;
  for (std::size_t j = 1; j < kCells; ++j) {
    const double second = vals[j - 1] - 2.0 * vals[j] + vals[j + 1];
    run = std::abs(second) < tol ? run + 1 : 0;
    best = std::max(best, run);
  }
  const double longest = best == 0 ? 0.0 : h * static_cast<double>(best + 1);
  return {longest < window * (1.0 - 1e-9), longest};
}

HypothesisReport check_hypotheses(const ProblemSpec& spec, std::size_t n_samples) {
  return {check_h1(spec), check_h2(spec, n_samples), check_h3(spec), check_nondegeneracy(spec)};
}

double lipschitz_estimate(const ScalarFn& g, Interval range) {
  constexpr double kLattice = 1.0 / 4096.0;
  constexpr int kSub = 16;
  const auto first = static_cast<long long>(std::ceil(range.lo / kLattice)) - 1;
  const auto last = static_cast<long long>(std::floor(range.hi / kLattice));
  double best = 0.0;
  for (long long j = first; j <= last; ++j) {
    const double left = static_cast<double>(j) * kLattice;
    const double step = kLattice / kSub;
    double prev = g(left);
    for (int q = 1; q <= kSub; ++q) {
      const double x = left + q * step;
      const double v = g(x);
      best = std::max(best, std::abs(v - prev) / step);
      prev = v;
    }
  }
  return best;
}

}  // namespace degenfv
