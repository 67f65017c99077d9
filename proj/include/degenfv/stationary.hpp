#pragma once

#include <cstddef>
#include <vector>

#include "degenfv/fv_solver.hpp"

namespace degenfv {

/// u + (f(u) - phi(u)_x)_x = g with b(u) - (f(u) - phi(u)_x) eta = 0 at both
/// ends; g holds one value per cell.
struct StationaryProblem {
  ProblemSpec spec;
  std::vector<double> g;
};

/// Total flux on faces 1/2 .. I+1/2.
struct FaceFluxProfile {
  Grid grid;
  std::vector<double> values;
};

struct StationaryOptions {
  /// L1 residual target; non-positive means 1e-10 * I.
  double tol = 0.0;
  std::size_t max_iterations = 10'000'000;
  double cfl_safety = 0.95;
};

struct StationarySolution {
  CellField u;
  FaceFluxProfile faces;
  double residual;  // sum |r_i| dx
  std::size_t iterations;
};

/// r_i = u_i + scale * (Phi_{i+1/2} - Phi_{i-1/2}) / dx - g_i with the face
/// fluxes of Scheme (boundary faces -b(u_1), +b(u_I)).
CellField assemble_residual(const CellField& u, const StationaryProblem& prob,
                            const NumericalFlux& flux, double scale = 1.0);

/// Pseudo-time marching w <- w - tau * r(w) from w = g until the L1 residual
/// drops below tol. Throws kNoConvergence with the last residual otherwise.
StationarySolution solve_stationary(const StationaryProblem& prob, const Grid& grid,
                                    const NumericalFlux& flux, StationaryOptions options = {});

struct FluxRegularityReport {
  double max_jump;            // max_i |Phi_{i+1/2} - Phi_{i-1/2}|
  std::size_t max_jump_cell;  // 0-based cell index
  double left_residual;       // |Phi_{1/2} + b(u_1)|
  double right_residual;      // |Phi_{I+1/2} - b(u_I)|
};

FluxRegularityReport flux_regularity_report(const FaceFluxProfile& profile, const CellField& u,
                                            const StationaryProblem& prob);

/// Solves u + lambda (Phi(u))_x = w; lambda = 0 returns w.
CellField resolvent(double lambda, const CellField& w, const ProblemSpec& spec,
                    const NumericalFlux& flux, double tol = 0.0);

}  // namespace degenfv
