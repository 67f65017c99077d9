#include "degenfv/fv_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "degenfv/error.hpp"

namespace degenfv {

Grid::Grid(double a, double b_end, std::size_t cells) : a_(a), b_end_(b_end), cells_(cells) {
  if (cells < 3) throw Error(ErrorKind::kInvalidSpec, "grid needs at least 3 cells");
  if (!(b_end > a)) throw Error(ErrorKind::kInvalidSpec, "grid needs a < b_end");
}

Grid Grid::with_spacing(Interval domain, double dx) {
  if (!(dx > 0.0)) throw Error(ErrorKind::kInvalidSpec, "dx must be positive");
  const double n = std::round((domain.hi - domain.lo) / dx);
  if (n < 3.0) throw Error(ErrorKind::kInvalidSpec, "grid needs at least 3 cells");
  return Grid(domain.lo, domain.hi, static_cast<std::size_t>(n));
}

double Grid::face(std::size_t k) const noexcept {
  if (k == cells_) return b_end_;
  return a_ + (b_end_ - a_) * static_cast<double>(k) / static_cast<double>(cells_);
}

double Grid::center(std::size_t i) const noexcept { return 0.5 * (face(i) + face(i + 1)); }

double CellField::mass() const {
  return std::accumulate(values.begin(), values.end(), 0.0) * grid.dx();
}

CellField init_cells(const ProblemSpec& spec, const Grid& grid) {
  CellField out{grid, std::vector<double>(grid.cells())};
  const double u_max = spec.u_max();
  for (std::size_t i = 0; i < grid.cells(); ++i) {
    const double lo = grid.face(i);
    const double hi = grid.face(i + 1);
    const double avg = spec.u0.integral(lo, hi) / (hi - lo);
    if (!(avg >= -1e-12 && avg <= u_max + 1e-12)) {
      std::ostringstream os;
      os << "cell " << i + 1 << " average " << avg << " outside [0, " << u_max << "]";
      throw Error(ErrorKind::kInitOutOfRange, os.str());
    }
    out.values[i] = avg;
  }
  return out;
}

namespace {

ScalarFn regularized_diffusion(const ScalarFn& phi, double eps) {
  return ScalarFn("phi_eps", [phi, eps](double u) { return phi(u) + eps * u; },
                  phi.lipschitz() + eps, Shape::kNondecreasing);
}

ScalarFn regularized_boundary(const ProblemSpec& spec, const ScalarFn& phi_eps) {
  std::optional<ScalarFn> beta = spec.boundary.beta;
  if (!beta) {
    const H2Result h2 = check_h2(spec);
    if (!h2.pass || !h2.beta) {
      throw Error(ErrorKind::kNoBeta, "b is not of the form beta o phi: " + h2.reason);
    }
    beta = h2.beta->as_fn();
  }
  return ScalarFn("b_eps", [beta = *beta, phi_eps](double u) { return beta(phi_eps(u)); },
                  beta->lipschitz() * phi_eps.lipschitz(), Shape::kNondecreasing);
}

}  // namespace

Scheme::Scheme(const ProblemSpec& spec, const SchemeConfig& config)
    : flux_(config.flux),
      diffusion_(config.epsilon > 0.0 ? regularized_diffusion(spec.diffusion.phi, config.epsilon)
                                      : spec.diffusion.phi),
      boundary_(config.epsilon > 0.0 ? regularized_boundary(spec, diffusion_) : spec.boundary.b),
      epsilon_(config.epsilon),
      paper_literal_left_(config.paper_literal_left_boundary) {
  if (config.epsilon < 0.0) throw Error(ErrorKind::kConfig, "epsilon must be >= 0");
}

double Scheme::left_face_flux(double u_first) const {
  const double b = boundary_(u_first);
  return paper_literal_left_ ? b : -b;
}

void Scheme::face_fluxes(std::span<const double> u, double dx, std::span<double> out) const {
  const std::size_t n = u.size();
  out[0] = left_face_flux(u[0]);
  out[n] = right_face_flux(u[n - 1]);
  double phi_left = diffusion_(u[0]);
  for (std::size_t k = 1; k < n; ++k) {
    const double phi_right = diffusion_(u[k]);
    out[k] = flux_(u[k - 1], u[k]) - (phi_right - phi_left) / dx;
    phi_left = phi_right;
  }
}

double Scheme::max_stable_dt(const Grid& grid) const {
  const double dx = grid.dx();
  const double speed = flux_.cfl_speed();
  const double l_phi = diffusion_.lipschitz();
  const double l_b = boundary_.lipschitz();
  const double interior = dx * dx / (speed * dx + 2.0 * l_phi);
  const double boundary = dx * dx / ((speed + l_b) * dx + l_phi);
  return std::min(interior, boundary);
}

double compute_dt(const ProblemSpec& spec, const Grid& grid, const SchemeConfig& config) {
  if (!(config.cfl_safety > 0.0 && config.cfl_safety <= 1.0)) {
    throw Error(ErrorKind::kConfig, "cfl_safety must lie in (0, 1]");
  }
  const Scheme scheme(spec, config);
  const double dt = config.cfl_safety * scheme.max_stable_dt(grid);
  if (!std::isfinite(dt)) throw Error(ErrorKind::kConfig, "no finite stable step (all speeds zero)");
  return dt;
}

double resolve_dt(const ProblemSpec& spec, const Grid& grid, const SchemeConfig& config) {
  if (!config.fixed_dt) return compute_dt(spec, grid, config);
  const double dt = *config.fixed_dt;
  if (!(dt > 0.0)) throw Error(ErrorKind::kConfig, "time step must be positive");
  const double bound = Scheme(spec, config).max_stable_dt(grid);
  if (dt > bound * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dt = " << dt << " exceeds the monotonicity bound " << bound;
    throw Error(ErrorKind::kCflViolation, os.str());
  }
  return dt;
}

StepResult step(const CellField& state, const Scheme& scheme, double dt) {
  const std::size_t n = state.values.size();
  const double dx = state.grid.dx();
  const double lambda = dt / dx;
  std::vector<double> faces(n + 1);
  scheme.face_fluxes(state.values, dx, faces);
  StepResult out{CellField{state.grid, std::vector<double>(n)}, faces[0], faces[n]};
  for (std::size_t i = 0; i < n; ++i) {
    const double next = state.values[i] - lambda * (faces[i + 1] - faces[i]);
    if (!std::isfinite(next)) {
      throw Error(ErrorKind::kNanDetected, "non-finite value in cell " + std::to_string(i + 1));
    }
    out.field.values[i] = next;
  }
  return out;
}

CellField step(const CellField& state, const ProblemSpec& spec, const SchemeConfig& config) {
  const Scheme scheme(spec, config);
  return step(state, scheme, resolve_dt(spec, state.grid, config)).field;
}

namespace {

StepLog describe(std::size_t index, double time, double dt, const CellField& field,
                 double left_flux, double right_flux) {
  const auto& v = field.values;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return StepLog{index,
                 time,
                 dt,
                 field.mass(),
                 left_flux,
                 right_flux,
                 *lo,
                 *hi,
                 static_cast<std::size_t>(lo - v.begin()),
                 static_cast<std::size_t>(hi - v.begin())};
}

std::vector<double> snapshot_schedule(const ProblemSpec& spec, const SchemeConfig& config) {
  std::vector<double> times = config.snapshot_times;
  for (double t : times) {
    if (!(t >= 0.0 && t <= spec.horizon)) {
      throw Error(ErrorKind::kConfig, "snapshot time " + std::to_string(t) + " outside [0, T]");
    }
  }
  times.push_back(spec.horizon);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  if (!times.empty() && times.front() == 0.0) times.erase(times.begin());
  return times;
}

}  // namespace

SolutionRecord run_from(const CellField& initial, const ProblemSpec& spec,
                        const SchemeConfig& config) {
  const Scheme scheme(spec, config);
  const Grid& grid = initial.grid;
  const double dt = resolve_dt(spec, grid, config);

  SolutionRecord rec{config.flux.name(), config.epsilon, config.paper_literal_left_boundary,
                     grid, {}, {}, {}};
  rec.snapshots.push_back({0.0, 0, initial});
  rec.steps.push_back(describe(0, 0.0, 0.0, initial, 0.0, 0.0));
  if (config.keep_history) rec.history.push_back(initial.values);

  CellField state = initial;
  double t = 0.0;
  std::size_t index = 0;
  for (double target : snapshot_schedule(spec, config)) {
    const double span = target - t;
    const double ratio = span / dt;
    std::size_t full;
    double tail;
    if (std::abs(ratio - std::round(ratio)) < 1e-9) {
      full = static_cast<std::size_t>(std::round(ratio));
      tail = 0.0;
    } else {
      full = static_cast<std::size_t>(std::floor(ratio));
      tail = span - static_cast<double>(full) * dt;
    }
    const std::size_t count = full + (tail > 0.0 ? 1 : 0);
    const double start = t;
    for (std::size_t k = 1; k <= count; ++k) {
      const double h = k <= full ? dt : tail;
      ++index;
      StepResult res = [&] {
        try {
          return step(state, scheme, h);
        } catch (const Error& e) {
          throw Error(e.kind(), std::string(e.what()) + " at step " + std::to_string(index), index);
        }
      }();
      state = std::move(res.field);
      const double now = k == count ? target : start + static_cast<double>(k) * dt;
      rec.steps.push_back(describe(index, now, h, state, res.left_flux, res.right_flux));
      if (config.keep_history) rec.history.push_back(state.values);
    }
    t = target;
    rec.snapshots.push_back({target, index, state});
  }
  return rec;
}

SolutionRecord run(const ProblemSpec& spec, const Grid& grid, const SchemeConfig& config) {
  return run_from(init_cells(spec, grid), spec, config);
}

SolutionRecord viscous_run(const ProblemSpec& spec, const Grid& grid, const SchemeConfig& config) {
  if (!(config.epsilon > 0.0)) throw Error(ErrorKind::kConfig, "viscous run needs epsilon > 0");
  return run(spec, grid, config);
}

}  // namespace degenfv
