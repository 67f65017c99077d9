#pragma once

#include <algorithm>
#include <functional>
#include <string>

#include "degenfv/problem.hpp"

namespace degenfv {

enum class FluxKind { kGodunov, kRusanov, kEngquistOsher };

std::string to_string(FluxKind kind);
/// Accepts "godunov", "rusanov" and "engquist-osher".
FluxKind flux_kind_from_string(const std::string& name);

/// Monotone, consistent two-point flux F(u, v) for the underlying f. The
/// left state is u, the right state is v.
class NumericalFlux {
 public:
  using Rule = std::function<double(double, double)>;

  NumericalFlux(FluxKind kind, ScalarFn f, Rule rule, double lipschitz_u, double lipschitz_v,
                double cfl_speed);

  double operator()(double u, double v) const { return rule_(u, v); }

  FluxKind kind() const noexcept { return kind_; }
  std::string name() const { return to_string(kind_); }
  const ScalarFn& f() const noexcept { return f_; }
  double lipschitz_u() const noexcept { return lipschitz_u_; }
  double lipschitz_v() const noexcept { return lipschitz_v_; }
  /// Bound on dF/du(w, .) - dF/dv(., w), the quantity that enters the
  /// monotonicity time-step restriction.
  double cfl_speed() const noexcept { return cfl_speed_; }

 private:
  FluxKind kind_;
  ScalarFn f_;
  Rule rule_;
  double lipschitz_u_;
  double lipschitz_v_;
  double cfl_speed_;
};

enum class Extrema { kAuto, kSampled };

/// F(u,v) = min of f over [u,v] if u <= v, max over [v,u] otherwise.
/// kAuto uses closed forms when f carries a known Shape.
NumericalFlux godunov(const ScalarFn& f, Extrema mode = Extrema::kAuto);

/// F(u,v) = (f(u)+f(v))/2 - (speed/2)(v-u). Throws kSpeedTooSmall when
/// speed is below the sampled Lipschitz constant of f on [0, u_max].
NumericalFlux rusanov(const ScalarFn& f, double speed, double u_max);
/// Speed defaults to 1.05 times the sampled Lipschitz constant.
NumericalFlux rusanov(const ScalarFn& f, double u_max);

/// F(u,v) = f(0) + int_0^u max(f',0) + int_0^v min(f',0).
NumericalFlux engquist_osher(const ScalarFn& f, Extrema mode = Extrema::kAuto);

NumericalFlux make_flux(FluxKind kind, const ScalarFn& f, double u_max);

/// Crandall-Majda numerical entropy flux for the Kruzhkov entropy |u - k|.
inline double entropy_flux(const NumericalFlux& flux, double k, double u, double v) {
  return flux(std::max(u, k), std::max(v, k)) - flux(std::min(u, k), std::min(v, k));
}

/// Minimum and maximum of f over [lo, hi] by dense sampling (2049 points)
/// followed by golden-section refinement around the best sample.
double sampled_min(const ScalarFn& f, double lo, double hi);
double sampled_max(const ScalarFn& f, double lo, double hi);

/// Positive and negative variation of f from 0 to x, i.e. the integrals of
/// max(f',0) and min(f',0), by adaptive bisection to 1e-10.
double positive_variation(const ScalarFn& f, double x);
double negative_variation(const ScalarFn& f, double x);

}  // namespace degenfv
