#include "degenfv/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "degenfv/error.hpp"

namespace degenfv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

void require_history(const SolutionRecord& rec, const char* who) {
  if (rec.history.size() != rec.steps.size()) {
    throw Error(ErrorKind::kConfigMismatch, std::string(who) + " needs a record kept with history");
  }
}

Scheme scheme_for(const SolutionRecord& rec, const ProblemSpec& spec, const NumericalFlux& flux) {
  SchemeConfig cfg{flux};
  cfg.epsilon = rec.epsilon;
  cfg.paper_literal_left_boundary = rec.paper_literal_left_boundary;
  return Scheme(spec, cfg);
}

// 0/0 = 1, x/0 = inf.
double safe_ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 1.0 : kInf;
  return num / den;
}

}  // namespace

bool DiagnosticsReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* DiagnosticsReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string DiagnosticsReport::to_csv() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "check,pass,magnitude,tolerance,witness_step,witness_cell\n";
  for (const auto& c : checks) {
    os << c.name << ',' << (c.pass ? 1 : 0) << ',' << c.magnitude << ',' << c.tolerance << ',';
    if (c.witness_step) os << *c.witness_step;
    os << ',';
    if (c.witness_cell) os << *c.witness_cell;
    os << '\n';
  }
  return os.str();
}

std::string DiagnosticsReport::summary() const {
  std::ostringstream os;
  os << std::setprecision(6);
  for (const auto& c : checks) {
    os << (c.pass ? "[pass] " : "[FAIL] ") << std::left << std::setw(28) << c.name
       << " magnitude=" << c.magnitude << " tol=" << c.tolerance;
    if (c.witness_step) os << " step=" << *c.witness_step;
    if (c.witness_cell) os << " cell=" << *c.witness_cell;
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << '\n';
  }
  return os.str();
}

MaxPrincipleReport max_principle_scan(const SolutionRecord& rec, double u_max) {
  if (rec.steps.empty()) throw Error(ErrorKind::kConfigMismatch, "empty record");
  constexpr double kTol = 1e-12;
  MaxPrincipleReport rep{{"max_principle", true, 0.0, kTol, {}, {}, {}}, kInf, -kInf};
  for (const auto& s : rec.steps) {
    rep.min = std::min(rep.min, s.min);
    rep.max = std::max(rep.max, s.max);
    if (rep.check.pass && (s.min < -kTol || s.max > u_max + kTol)) {
      rep.check.pass = false;
      rep.check.witness_step = s.step;
      rep.check.witness_cell = (s.max > u_max + kTol ? s.argmax : s.argmin) + 1;
    }
  }
  rep.check.magnitude = std::max({0.0, rep.max - u_max, -rep.min});
  std::ostringstream os;
  os << "min=" << rep.min << " max=" << rep.max;
  rep.check.note = os.str();
  return rep;
}

CheckResult mass_balance_check(const SolutionRecord& rec) {
  const double tol = 1e-13 * static_cast<double>(rec.grid.cells());
  CheckResult c{"mass_balance", true, 0.0, tol, {}, {}, {}};
  for (std::size_t n = 1; n < rec.steps.size(); ++n) {
    const auto& prev = rec.steps[n - 1];
    const auto& cur = rec.steps[n];
    const double err = std::abs(cur.mass - prev.mass + cur.dt * (cur.right_flux - cur.left_flux));
    if (err > c.magnitude) {
      c.magnitude = err;
      c.witness_step = cur.step;
    }
  }
  c.pass = c.magnitude <= tol;
  if (c.pass) c.witness_step.reset();
  return c;
}

EntropyReport entropy_residual(const SolutionRecord& rec, const ProblemSpec& spec,
                               const NumericalFlux& flux, const std::vector<double>& k_grid) {
  if (flux.name() != rec.flux_name) {
    throw Error(ErrorKind::kFluxMismatch,
                "record was produced with " + rec.flux_name + ", not " + flux.name());
  }
  require_history(rec, "entropy_residual");
  for (double k : k_grid) {
    if (!(k >= 0.0 && k <= spec.u_max())) throw Error(ErrorKind::kConfig, "k outside [0, u_max]");
  }
  const Scheme scheme = scheme_for(rec, spec, flux);
  const ScalarFn& D = scheme.diffusion();
  const ScalarFn& b = scheme.boundary();
  const std::size_t n = rec.grid.cells();
  const double dx = rec.grid.dx();

  constexpr double kTol = 1e-12;
  EntropyReport rep{{"entropy_interior", true, 0.0, kTol, {}, {}, {}}, 0.0, 0.0, 0.0};
  std::vector<double> q(n + 1);
  for (double k : k_grid) {
    const double dk = D(k);
    const double left_source = std::abs(spec.f(k) * kNormalLeft - b(k));
    const double right_source = std::abs(spec.f(k) * kNormalRight - b(k));
    for (std::size_t s = 1; s < rec.steps.size(); ++s) {
      const auto& u = rec.history[s - 1];
      const auto& next = rec.history[s];
      const double lambda = rec.steps[s].dt / dx;
      // Entropy flux G - Theta/dx on interior faces.
      for (std::size_t f = 1; f < n; ++f) {
        const double g = entropy_flux(flux, k, u[f - 1], u[f]);
        const double theta = std::abs(D(u[f]) - dk) - std::abs(D(u[f - 1]) - dk);
        q[f] = g - theta / dx;
      }
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const double r =
            std::abs(next[i] - k) - std::abs(u[i] - k) + lambda * (q[i + 1] - q[i]);
        if (r > rep.interior_max) {
          rep.interior_max = r;
          rep.worst_k = k;
          rep.check.witness_step = rec.steps[s].step;
          rep.check.witness_cell = i + 1;
        }
      }
      const double first = std::abs(next[0] - k) - std::abs(u[0] - k) +
                           lambda * (q[1] - left_source + std::abs(b(u[0]) - b(k)));
      const double last = std::abs(next[n - 1] - k) - std::abs(u[n - 1] - k) +
                          lambda * (-q[n - 1] - right_source + std::abs(b(u[n - 1]) - b(k)));
      rep.boundary_max = std::max({rep.boundary_max, first, last});
    }
  }
  rep.check.magnitude = rep.interior_max;
  rep.check.pass = rep.interior_max <= kTol;
  std::ostringstream os;
  os << "boundary residual (informational) " << rep.boundary_max;
  rep.check.note = os.str();
  if (rep.check.pass) {
    rep.check.witness_step.reset();
    rep.check.witness_cell.reset();
  }
  return rep;
}

double stationary_entropy_residual(const CellField& u, const StationaryProblem& prob,
                                   const NumericalFlux& flux, const std::vector<double>& k_grid) {
  const auto& v = u.values;
  const std::size_t n = v.size();
  const double dx = u.grid.dx();
  const ScalarFn& D = prob.spec.diffusion.phi;
  double worst = -kInf;
  for (double k : k_grid) {
    const double dk = D(k);
    std::vector<double> g(n + 1, 0.0);
    std::vector<double> theta(n + 1, 0.0);
    for (std::size_t f = 1; f < n; ++f) {
      g[f] = entropy_flux(flux, k, v[f - 1], v[f]);
      theta[f] = std::abs(D(v[f]) - dk) - std::abs(D(v[f - 1]) - dk);
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double r = (g[i + 1] - g[i]) / dx - (theta[i + 1] - theta[i]) / (dx * dx) -
                       sign0(v[i] - k) * (prob.g[i] - v[i]);
      worst = std::max(worst, r);
    }
  }
  return worst;
}

double l1_distance(const CellField& u, const CellField& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) s += std::abs(u.values[i] - v.values[i]);
  return s * u.grid.dx();
}

CellField coarsen(const CellField& fine) {
  const std::size_t n = fine.grid.cells();
  if (n % 2 != 0) throw Error(ErrorKind::kConfigMismatch, "coarsening needs an even cell count");
  CellField out{Grid(fine.grid.a(), fine.grid.b_end(), n / 2), std::vector<double>(n / 2)};
  for (std::size_t i = 0; i < n / 2; ++i) {
    out.values[i] = 0.5 * (fine.values[2 * i] + fine.values[2 * i + 1]);
  }
  return out;
}

ContractionReport l1_contraction_check(const SolutionRecord& rec1, const SolutionRecord& rec2) {
  require_history(rec1, "l1_contraction_check");
  require_history(rec2, "l1_contraction_check");
  if (!(rec1.grid == rec2.grid) || rec1.steps.size() != rec2.steps.size() ||
      rec1.flux_name != rec2.flux_name || rec1.epsilon != rec2.epsilon) {
    throw Error(ErrorKind::kConfigMismatch, "records differ in grid, flux or step count");
  }
  for (std::size_t s = 0; s < rec1.steps.size(); ++s) {
    if (rec1.steps[s].dt != rec2.steps[s].dt) {
      throw Error(ErrorKind::kConfigMismatch, "records use different time steps");
    }
  }
  constexpr double kTol = 1e-12;
  ContractionReport rep{{"l1_contraction", true, 0.0, kTol, {}, {}, {}}, {}};
  const double dx = rec1.grid.dx();
  for (std::size_t s = 0; s < rec1.history.size(); ++s) {
    double d = 0.0;
    for (std::size_t i = 0; i < rec1.history[s].size(); ++i) {
      d += std::abs(rec1.history[s][i] - rec2.history[s][i]);
    }
    rep.distances.push_back(d * dx);
  }
  double worst = -kInf;
  for (std::size_t s = 1; s < rep.distances.size(); ++s) {
    const double inc = rep.distances[s] - rep.distances[s - 1];
    if (inc > worst) {
      worst = inc;
      rep.check.witness_step = rec1.steps[s].step;
    }
  }
  rep.check.magnitude = std::max(worst, 0.0);
  rep.check.pass = worst <= kTol;
  if (rep.check.pass) rep.check.witness_step.reset();
  return rep;
}

IntegralSolutionReport integral_solution_check(const SolutionRecord& rec, const CellField& u_stat,
                                               const std::vector<double>& g, double tol) {
  if (!(u_stat.grid == rec.grid) || g.size() != rec.grid.cells()) {
    throw Error(ErrorKind::kConfigMismatch, "stationary pair does not live on the record's grid");
  }
  constexpr double kEqual = 1e-12;
  const double dx = rec.grid.dx();
  const auto& u = u_stat.values;
  IntegralSolutionReport rep{{"integral_solution", true, 0.0, tol, {}, {}, {}}, {}};
  for (const auto& snap : rec.snapshots) {
    double d = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) d += std::abs(snap.field.values[i] - u[i]);
    rep.distances.push_back(d * dx);
  }
  double worst = -kInf;
  for (std::size_t n = 0; n + 1 < rec.snapshots.size(); ++n) {
    const auto& v = rec.snapshots[n].field.values;
    const double dt = rec.snapshots[n + 1].time - rec.snapshots[n].time;
    if (!(dt > 0.0)) continue;
    double rhs = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double diff = v[i] - u[i];
      rhs += std::abs(diff) <= kEqual ? std::abs(u[i] - g[i]) : sign0(diff) * (u[i] - g[i]);
    }
    rhs *= dx;
    const double lhs = (rep.distances[n + 1] - rep.distances[n]) / dt;
    if (lhs - rhs > worst) {
      worst = lhs - rhs;
      rep.check.witness_step = rec.snapshots[n + 1].step;
    }
  }
  rep.check.magnitude = std::max(worst, 0.0);
  rep.check.pass = worst <= tol;
  if (rep.check.pass) rep.check.witness_step.reset();
  return rep;
}

BoundaryLayer boundary_layer_indicator(const CellField& field, std::size_t width) {
  const auto& v = field.values;
  const std::size_t n = v.size();
  if (width < 1 || width > n / 4) {
    throw Error(ErrorKind::kConfig, "boundary-layer width must lie in [1, I/4]");
  }
  const double dx = field.grid.dx();
  const auto slope = [&](std::size_t i) { return std::abs(v[i + 1] - v[i]) / dx; };

  std::vector<double> interior;
  for (std::size_t i = n / 3; i + 1 < 2 * n / 3 + 1 && i + 1 < n; ++i) interior.push_back(slope(i));
  double median = 0.0;
  if (!interior.empty()) {
    const auto mid = interior.begin() + static_cast<std::ptrdiff_t>(interior.size() / 2);
    std::nth_element(interior.begin(), mid, interior.end());
    median = *mid;
    if (interior.size() % 2 == 0) {
      median = 0.5 * (median + *std::max_element(interior.begin(), mid));
    }
  }
  double left = 0.0;
  double right = 0.0;
  for (std::size_t j = 0; j < width; ++j) {
    left = std::max(left, slope(j));
    right = std::max(right, slope(n - 2 - j));
  }
  return {safe_ratio(left, median), safe_ratio(right, median)};
}

ViscousReport viscous_estimates(const std::vector<std::pair<double, const SolutionRecord*>>& runs,
                                const ProblemSpec& spec) {
  if (runs.size() < 2) {
    throw Error(ErrorKind::kInsufficientSweep, "viscous estimates need at least two epsilons");
  }
  ViscousReport rep{{"viscous_estimates", true, 0.0, 2.0, {}, {}, {}}, {}, 0.0, 0.0, 0.0};
  for (const auto& [eps, rec] : runs) {
    require_history(*rec, "viscous_estimates");
    SchemeConfig cfg{godunov(spec.f)};
    cfg.epsilon = eps;
    const Scheme scheme(spec, cfg);
    const ScalarFn& D = scheme.diffusion();
    const ScalarFn& b = scheme.boundary();
    const double dx = rec->grid.dx();
    ViscousNorms row{eps, 0.0, 0.0, 0.0};
    for (std::size_t s = 0; s + 1 < rec->steps.size(); ++s) {
      const double dt = rec->steps[s + 1].dt;
      const auto& u = rec->history[s];
      double grad = 0.0;
      double diff = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = D(u[i]);
        diff += d * d;
        if (i + 1 < u.size()) {
          const double du = (u[i + 1] - u[i]) / dx;
          const double dd = (D(u[i + 1]) - d) / dx;
          grad += du * du;
          diff += dd * dd;
        }
      }
      row.gradient += eps * grad * dx * dt;
      row.diffusion += diff * dx * dt;
      row.boundary += (std::abs(b(u.front())) + std::abs(b(u.back()))) * dt;
    }
    rep.rows.push_back(row);
  }
  std::sort(rep.rows.begin(), rep.rows.end(),
            [](const ViscousNorms& l, const ViscousNorms& r) { return l.epsilon > r.epsilon; });
  const auto growth = [&](double ViscousNorms::*field) {
    double worst = 0.0;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      for (std::size_t j = i + 1; j < rep.rows.size(); ++j) {
        worst = std::max(worst, safe_ratio(rep.rows[j].*field, rep.rows[i].*field));
      }
    }
    return worst;
  };
  rep.gradient_growth = growth(&ViscousNorms::gradient);
  rep.diffusion_growth = growth(&ViscousNorms::diffusion);
  rep.boundary_growth = growth(&ViscousNorms::boundary);
  rep.check.magnitude = std::max({rep.gradient_growth, rep.diffusion_growth, rep.boundary_growth});
  rep.check.pass = rep.check.magnitude <= 2.0;
  return rep;
}

}  // namespace degenfv
