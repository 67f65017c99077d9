#include "degenfv/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "degenfv/error.hpp"

namespace degenfv {

namespace {

Scheme stationary_scheme(const ProblemSpec& spec, const NumericalFlux& flux) {
  return Scheme(spec, SchemeConfig{flux});
}

void check_source(const std::vector<double>& g, const Grid& grid, double u_max) {
  if (g.size() != grid.cells()) {
    throw Error(ErrorKind::kConfigMismatch, "source has " + std::to_string(g.size()) +
                                                " values for " + std::to_string(grid.cells()) +
                                                " cells");
  }
  for (double v : g) {
    if (!(v >= 0.0 && v <= u_max)) {
      throw Error(ErrorKind::kInvalidSpec, "source values must lie in [0, u_max]");
    }
  }
}

struct MarchResult {
  std::vector<double> u;
  double residual;
  std::size_t iterations;
};

// Marches w_t = source - w - scale * (Phi(w))_x to its steady state.
MarchResult march(const Scheme& scheme, const Grid& grid, const std::vector<double>& source,
                  double scale, double tol, std::size_t max_iterations, double safety) {
  const std::size_t n = grid.cells();
  const double dx = grid.dx();
  const double speed = scheme.flux().cfl_speed();
  const double l_phi = scheme.diffusion().lipschitz();
  const double l_b = scheme.boundary().lipschitz();
  const double interior = 1.0 + scale * (speed / dx + 2.0 * l_phi / (dx * dx));
  const double boundary = 1.0 + scale * ((speed + l_b) / dx + l_phi / (dx * dx));
  const double tau = safety / std::max(interior, boundary);

  std::vector<double> w = source;
  std::vector<double> faces(n + 1);
  std::vector<double> r(n);
  double residual = 0.0;
  for (std::size_t it = 0; it <= max_iterations; ++it) {
    scheme.face_fluxes(w, dx, faces);
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = w[i] + scale * (faces[i + 1] - faces[i]) / dx - source[i];
      residual += std::abs(r[i]);
    }
    residual *= dx;
    if (!std::isfinite(residual)) {
      throw Error(ErrorKind::kNanDetected, "pseudo-time iterate became non-finite", it);
    }
    if (residual < tol) return {std::move(w), residual, it};
    if (it == max_iterations) break;
    for (std::size_t i = 0; i < n; ++i) w[i] -= tau * r[i];
  }
  std::ostringstream os;
  os << "residual " << residual << " still above " << tol << " after " << max_iterations
     << " iterations";
  throw Error(ErrorKind::kNoConvergence, os.str());
}

double default_tol(double tol, const Grid& grid) {
  return tol > 0.0 ? tol : 1e-10 * static_cast<double>(grid.cells());
}

}  // namespace

CellField assemble_residual(const CellField& u, const StationaryProblem& prob,
                            const NumericalFlux& flux, double scale) {
  const Grid& grid = u.grid;
  if (prob.g.size() != grid.cells()) throw Error(ErrorKind::kConfigMismatch, "source size mismatch");
  const Scheme scheme = stationary_scheme(prob.spec, flux);
  const std::size_t n = grid.cells();
  const double dx = grid.dx();
  std::vector<double> faces(n + 1);
  scheme.face_fluxes(u.values, dx, faces);
  CellField out{grid, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = u.values[i] + scale * (faces[i + 1] - faces[i]) / dx - prob.g[i];
  }
  return out;
}

StationarySolution solve_stationary(const StationaryProblem& prob, const Grid& grid,
                                    const NumericalFlux& flux, StationaryOptions options) {
  check_source(prob.g, grid, prob.spec.u_max());
  const Scheme scheme = stationary_scheme(prob.spec, flux);
  const double tol = default_tol(options.tol, grid);
  MarchResult m =
      march(scheme, grid, prob.g, 1.0, tol, options.max_iterations, options.cfl_safety);
  StationarySolution out{CellField{grid, std::move(m.u)},
                         FaceFluxProfile{grid, std::vector<double>(grid.cells() + 1)},
                         m.residual, m.iterations};
  scheme.face_fluxes(out.u.values, grid.dx(), out.faces.values);
  return out;
}

FluxRegularityReport flux_regularity_report(const FaceFluxProfile& profile, const CellField& u,
                                            const StationaryProblem& prob) {
  const auto& phi = profile.values;
  const std::size_t n = u.values.size();
  if (phi.size() != n + 1) throw Error(ErrorKind::kConfigMismatch, "profile/field size mismatch");
  FluxRegularityReport rep{0.0, 0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double jump = std::abs(phi[i + 1] - phi[i]);
    if (jump > rep.max_jump) {
      rep.max_jump = jump;
      rep.max_jump_cell = i;
    }
  }
  const auto& b = prob.spec.boundary.b;
  rep.left_residual = std::abs(phi[0] + b(u.values.front()));
  rep.right_residual = std::abs(phi[n] - b(u.values.back()));
  return rep;
}

CellField resolvent(double lambda, const CellField& w, const ProblemSpec& spec,
                    const NumericalFlux& flux, double tol) {
  if (lambda < 0.0) throw Error(ErrorKind::kConfig, "resolvent needs lambda >= 0");
  check_source(w.values, w.grid, spec.u_max());
  if (lambda == 0.0) return w;
  const Scheme scheme = stationary_scheme(spec, flux);
  MarchResult m = march(scheme, w.grid, w.values, lambda, default_tol(tol, w.grid), 10'000'000, 0.95);
  return CellField{w.grid, std::move(m.u)};
}

}  // namespace degenfv
