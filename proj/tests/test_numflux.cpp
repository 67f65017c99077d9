#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "degenfv/numflux.hpp"
#include "support.hpp"

namespace degenfv {
namespace {

using testing::error_kind_of;

double dense_min(const ScalarFn& f, double lo, double hi) {
  double m = std::min(f(lo), f(hi));
  constexpr int n = 200000;
  for (int j = 0; j <= n; ++j) m = std::min(m, f(lo + (hi - lo) * j / n));
  return m;
}

double dense_max(const ScalarFn& f, double lo, double hi) {
  double m = std::max(f(lo), f(hi));
  constexpr int n = 200000;
  for (int j = 0; j <= n; ++j) m = std::max(m, f(lo + (hi - lo) * j / n));
  return m;
}

// f(0) + int_0^u max(f',0) + int_0^v min(f',0) with the derivative written
// out by hand and the trapezoidal rule.
template <typename Deriv>
double eo_quadrature(double f0, Deriv df, double u, double v) {
  const auto integrate = [&](double x, bool positive) {
    constexpr int n = 100000;
    const double h = x / n;
    double sum = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double d = df(j * h);
      const double part = positive ? std::max(d, 0.0) : std::min(d, 0.0);
      sum += (j == 0 || j == n) ? 0.5 * part : part;
    }
    return sum * h;
  };
  return f0 + integrate(u, true) + integrate(v, false);
}

double lwr_prime(double s) { return (s >= 0.0 && s <= 1.0) ? 1.0 - 2.0 * s : 0.0; }
double burgers_prime(double s) { return s; }

TEST(FluxNames, RoundTrip) {
  for (auto kind : {FluxKind::kGodunov, FluxKind::kRusanov, FluxKind::kEngquistOsher}) {
    EXPECT_EQ(flux_kind_from_string(to_string(kind)), kind);
  }
  EXPECT_EQ(to_string(FluxKind::kEngquistOsher), "engquist-osher");
  EXPECT_EQ(error_kind_of([] { flux_kind_from_string("roe"); }), ErrorKind::kConfig);
}

TEST(Godunov, HandValuesOnLwr) {
  const auto F = godunov(fns::lwr());
  EXPECT_NEAR(F(0.7, 0.2), 0.25, 1e-15);
  EXPECT_NEAR(F(0.2, 0.4), 0.16, 1e-15);
  EXPECT_NEAR(F(0.9, 0.8), 0.16, 1e-15);
  EXPECT_NEAR(F(0.3, 0.3), 0.21, 1e-15);
}

TEST(Godunov, MatchesDenseExtrema) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& f : {fns::lwr(), fns::burgers()}) {
    for (auto mode : {Extrema::kAuto, Extrema::kSampled}) {
      const auto F = godunov(f, mode);
      for (int p = 0; p < 40; ++p) {
        const double u = unit(rng), v = unit(rng);
        const double expected = u <= v ? dense_min(f, u, v) : dense_max(f, v, u);
        EXPECT_NEAR(F(u, v), expected, 1e-9) << f.name() << " u=" << u << " v=" << v;
      }
    }
  }
}

TEST(Godunov, GenericShapeUsesSampling) {
  const ScalarFn bump("bump", [](double s) { return std::sin(3.0 * s); }, 3.0);
  const auto F = godunov(bump);
  EXPECT_NEAR(F(0.0, 1.0), 0.0, 1e-12);
  EXPECT_NEAR(F(1.0, 0.0), 1.0, 1e-10);
}

TEST(Rusanov, HandValue) {
  const auto F = rusanov(fns::burgers(), 1.0, 1.0);
  EXPECT_DOUBLE_EQ(F(1.0, 0.0), 0.75);
  EXPECT_DOUBLE_EQ(F(0.0, 1.0), -0.25);
  EXPECT_DOUBLE_EQ(F.cfl_speed(), 1.0);
}

TEST(Rusanov, DefaultSpeedAndTooSmallSpeed) {
  EXPECT_NEAR(rusanov(fns::lwr(), 1.0).cfl_speed(), 1.05, 1e-3);
  EXPECT_EQ(error_kind_of([] { rusanov(fns::burgers(), 0.5, 1.0); }), ErrorKind::kSpeedTooSmall);
}

TEST(EngquistOsher, MatchesQuadrature) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto mode : {Extrema::kAuto, Extrema::kSampled}) {
    const auto lwr = engquist_osher(fns::lwr(), mode);
    const auto burgers = engquist_osher(fns::burgers(), mode);
    for (int p = 0; p < 30; ++p) {
      const double u = unit(rng), v = unit(rng);
      EXPECT_NEAR(lwr(u, v), eo_quadrature(0.0, lwr_prime, u, v), 1e-8);
      EXPECT_NEAR(burgers(u, v), eo_quadrature(0.0, burgers_prime, u, v), 1e-8);
    }
  }
}

TEST(FluxProperties, MonotoneConsistentAcrossKindsAndFunctions) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto kind : {FluxKind::kGodunov, FluxKind::kRusanov, FluxKind::kEngquistOsher}) {
    for (const auto& f : {fns::lwr(), fns::burgers()}) {
      const auto F = make_flux(kind, f, 1.0);
      for (int p = 0; p < 2000; ++p) {
        double a = unit(rng), b = unit(rng);
        if (a > b) std::swap(a, b);
        const double w = unit(rng);
        ASSERT_GE(F(b, w), F(a, w) - 1e-12) << F.name() << ' ' << f.name();
        ASSERT_LE(F(w, b), F(w, a) + 1e-12) << F.name() << ' ' << f.name();
        ASSERT_NEAR(F(w, w), f(w), 1e-12) << F.name() << ' ' << f.name();
      }
    }
  }
}

TEST(FluxProperties, DeclaredLipschitzBoundsHold) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto kind : {FluxKind::kGodunov, FluxKind::kRusanov, FluxKind::kEngquistOsher}) {
    const auto F = make_flux(kind, fns::lwr(), 1.0);
    for (int p = 0; p < 500; ++p) {
      const double a = unit(rng), b = unit(rng), w = unit(rng);
      EXPECT_LE(std::abs(F(a, w) - F(b, w)), F.lipschitz_u() * std::abs(a - b) + 1e-12);
      EXPECT_LE(std::abs(F(w, a) - F(w, b)), F.lipschitz_v() * std::abs(a - b) + 1e-12);
    }
  }
}

TEST(GodunovVersusEngquistOsher, AgreeForBurgersOnTheUnitSquare) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto G = godunov(fns::burgers());
  const auto E = engquist_osher(fns::burgers());
  for (int p = 0; p < 1000; ++p) {
    const double u = unit(rng), v = unit(rng);
    EXPECT_NEAR(G(u, v), E(u, v), 1e-12);
  }
}

// The two fluxes coincide except for transonic rarefaction pairs
// u < 1/2 < v, where Godunov takes min(f(u), f(v)) and Engquist-Osher
// f(u) + f(v) - 1/4.
TEST(GodunovVersusEngquistOsher, LwrDifferOnlyAcrossTheSonicPoint) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto f = fns::lwr();
  const auto G = godunov(f);
  const auto E = engquist_osher(f);
  int transonic = 0;
  for (int p = 0; p < 1000; ++p) {
    const double u = unit(rng), v = unit(rng);
    if (u < 0.5 && v > 0.5) {
      ++transonic;
      EXPECT_NEAR(G(u, v) - E(u, v), 0.25 - std::max(f(u), f(v)), 1e-12);
    } else {
      EXPECT_NEAR(G(u, v), E(u, v), 1e-12);
    }
  }
  EXPECT_GT(transonic, 0);
  EXPECT_NEAR(G(0.2, 0.9), 0.09, 1e-15);
  EXPECT_NEAR(E(0.2, 0.9), 0.0, 1e-15);
}

TEST(EntropyFlux, ReducesToFluxDifferences) {
  const auto F = godunov(fns::lwr());
  const auto f = fns::lwr();
  EXPECT_NEAR(entropy_flux(F, 0.1, 0.3, 0.6), F(0.3, 0.6) - f(0.1), 1e-15);
  EXPECT_NEAR(entropy_flux(F, 0.9, 0.3, 0.6), f(0.9) - F(0.3, 0.6), 1e-15);
  EXPECT_NEAR(entropy_flux(F, 0.4, 0.4, 0.4), 0.0, 1e-15);
}

TEST(Variation, PositiveAndNegativeParts) {
  EXPECT_NEAR(positive_variation(fns::lwr(), 1.0), 0.25, 1e-10);
  EXPECT_NEAR(negative_variation(fns::lwr(), 1.0), -0.25, 1e-10);
  EXPECT_NEAR(positive_variation(fns::burgers(), 0.8), 0.32, 1e-10);
  EXPECT_NEAR(sampled_max(fns::lwr(), 0.0, 1.0), 0.25, 1e-12);
  EXPECT_NEAR(sampled_min(fns::lwr(), 0.2, 0.9), 0.09, 1e-12);
}

}  // namespace
}  // namespace degenfv
