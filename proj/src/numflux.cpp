#include "degenfv/numflux.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "degenfv/error.hpp"

namespace degenfv {

std::string to_string(FluxKind kind) {
  switch (kind) {
    case FluxKind::kGodunov: return "godunov";
    case FluxKind::kRusanov: return "rusanov";
    case FluxKind::kEngquistOsher: return "engquist-osher";
  }
  return "unknown";
}

FluxKind flux_kind_from_string(const std::string& name) {
  if (name == "godunov") return FluxKind::kGodunov;
  if (name == "rusanov") return FluxKind::kRusanov;
  if (name == "engquist-osher") return FluxKind::kEngquistOsher;
  throw Error(ErrorKind::kConfig, "unknown flux '" + name + "'");
}

NumericalFlux::NumericalFlux(FluxKind kind, ScalarFn f, Rule rule, double lipschitz_u,
                             double lipschitz_v, double cfl_speed)
    : kind_(kind),
      f_(std::move(f)),
      rule_(std::move(rule)),
      lipschitz_u_(lipschitz_u),
      lipschitz_v_(lipschitz_v),
      cfl_speed_(cfl_speed) {}

namespace {

constexpr std::size_t kExtremaSamples = 2048;

// Golden-section search for the best value of f on [a, b], assuming f is
// unimodal there.
template <typename Better>
double golden_section(const ScalarFn& f, double a, double b, Better better) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    if (better(fc, fd)) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return better(fc, fd) ? fc : fd;
}

template <typename Better>
double sampled_extremum(const ScalarFn& f, double lo, double hi, Better better) {
  if (!(hi > lo)) return f(lo);
  const double h = (hi - lo) / kExtremaSamples;
  std::size_t best_j = 0;
  double best = f(lo);
  for (std::size_t j = 1; j <= kExtremaSamples; ++j) {
    const double x = j == kExtremaSamples ? hi : lo + h * static_cast<double>(j);
    const double v = f(x);
    if (better(v, best)) {
      best = v;
      best_j = j;
    }
  }
  const double a = best_j == 0 ? lo : lo + h * static_cast<double>(best_j - 1);
  const double b = best_j == kExtremaSamples ? hi : lo + h * static_cast<double>(best_j + 1);
  const double refined = golden_section(f, a, b, better);
  return better(refined, best) ? refined : best;
}

// Positive variation of f over [lo, hi], lo <= hi. Local extrema are
// bracketed on a uniform sample and refined by golden-section search; f is
// taken to be monotone between consecutive extrema.
double positive_variation_on(const ScalarFn& f, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  const std::size_t n = kExtremaSamples;
  const double h = (hi - lo) / static_cast<double>(n);
  const auto x = [&](std::size_t j) { return j == n ? hi : lo + h * static_cast<double>(j); };
  std::vector<double> v(n + 1);
  for (std::size_t j = 0; j <= n; ++j) v[j] = f(x(j));

  double total = 0.0;
  double last = v[0];
  int direction = 0;
  std::size_t turn_start = 0;  // left end of the last non-flat sample step
  for (std::size_t j = 1; j <= n; ++j) {
    const int s = (v[j] > v[j - 1]) - (v[j] < v[j - 1]);
    if (s == 0) continue;
    if (direction != 0 && s != direction) {
      const double a = x(turn_start);
      const double b = x(j);
      const double extreme =
          direction > 0 ? std::max(v[j - 1], golden_section(f, a, b, std::greater<>()))
                        : std::min(v[j - 1], golden_section(f, a, b, std::less<>()));
      total += std::max(extreme - last, 0.0);
      last = extreme;
    }
    direction = s;
    turn_start = j - 1;
  }
  return total + std::max(v[n] - last, 0.0);
}

}  // namespace

double sampled_min(const ScalarFn& f, double lo, double hi) {
  return sampled_extremum(f, lo, hi, [](double x, double y) { return x < y; });
}

double sampled_max(const ScalarFn& f, double lo, double hi) {
  return sampled_extremum(f, lo, hi, [](double x, double y) { return x > y; });
}

double positive_variation(const ScalarFn& f, double x) {
  return x >= 0.0 ? positive_variation_on(f, 0.0, x) : -positive_variation_on(f, x, 0.0);
}

double negative_variation(const ScalarFn& f, double x) {
  return (f(x) - f(0.0)) - positive_variation(f, x);
}

NumericalFlux godunov(const ScalarFn& f, Extrema mode) {
  const double lip = f.lipschitz();
  const Shape shape = mode == Extrema::kSampled ? Shape::kGeneric : f.shape();
  const double c = f.turning_point();
  NumericalFlux::Rule rule;
  switch (shape) {
    case Shape::kNondecreasing:
      rule = [f](double u, double) { return f(u); };
      break;
    case Shape::kNonincreasing:
      rule = [f](double, double v) { return f(v); };
      break;
    case Shape::kPeak:
      rule = [f, c](double u, double v) {
        return u <= v ? std::min(f(u), f(v)) : f(std::clamp(c, v, u));
      };
      break;
    case Shape::kValley:
      rule = [f, c](double u, double v) {
        return u <= v ? f(std::clamp(c, u, v)) : std::max(f(u), f(v));
      };
      break;
    case Shape::kGeneric:
      rule = [f](double u, double v) {
        if (u == v) return f(u);
        return u < v ? sampled_min(f, u, v) : sampled_max(f, v, u);
      };
      break;
  }
  return NumericalFlux(FluxKind::kGodunov, f, std::move(rule), lip, lip, lip);
}

NumericalFlux rusanov(const ScalarFn& f, double speed, double u_max) {
  const double needed = lipschitz_estimate(f, {0.0, u_max});
  // The lattice estimate may overshoot the true constant slightly.
  if (speed < needed / (1.0 + 1e-3)) {
    throw Error(ErrorKind::kSpeedTooSmall, "Rusanov speed " + std::to_string(speed) +
                                               " is below the Lipschitz estimate " +
                                               std::to_string(needed));
  }
  auto rule = [f, speed](double u, double v) {
    return 0.5 * (f(u) + f(v)) - 0.5 * speed * (v - u);
  };
  const double lip = 0.5 * (f.lipschitz() + speed);
  return NumericalFlux(FluxKind::kRusanov, f, std::move(rule), lip, lip, speed);
}

NumericalFlux rusanov(const ScalarFn& f, double u_max) {
  return rusanov(f, 1.05 * lipschitz_estimate(f, {0.0, u_max}), u_max);
}

NumericalFlux engquist_osher(const ScalarFn& f, Extrema mode) {
  const double lip = f.lipschitz();
  const Shape shape = mode == Extrema::kSampled ? Shape::kGeneric : f.shape();
  const double c = f.turning_point();
  NumericalFlux::Rule rule;
  switch (shape) {
    case Shape::kNondecreasing:
      rule = [f](double u, double) { return f(u); };
      break;
    case Shape::kNonincreasing:
      rule = [f](double, double v) { return f(v); };
      break;
    case Shape::kPeak:
      rule = [f, c](double u, double v) { return f(std::min(u, c)) + f(std::max(v, c)) - f(c); };
      break;
    case Shape::kValley:
      rule = [f, c](double u, double v) { return f(std::max(u, c)) + f(std::min(v, c)) - f(c); };
      break;
    case Shape::kGeneric:
      // f(0) + P(u) + (f(v) - f(0) - P(v)) with P the positive variation.
      rule = [f](double u, double v) {
        if (u == v) return f(u) + 0.0;
        return f(v) + positive_variation(f, u) - positive_variation(f, v);
      };
      break;
  }
  return NumericalFlux(FluxKind::kEngquistOsher, f, std::move(rule), lip, lip, lip);
}

NumericalFlux make_flux(FluxKind kind, const ScalarFn& f, double u_max) {
  switch (kind) {
    case FluxKind::kGodunov: return godunov(f);
    case FluxKind::kRusanov: return rusanov(f, u_max);
    case FluxKind::kEngquistOsher: return engquist_osher(f);
  }
  throw Error(ErrorKind::kConfig, "unknown flux kind");
}

}  // namespace degenfv
