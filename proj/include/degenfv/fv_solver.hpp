#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "degenfv/numflux.hpp"
#include "degenfv/problem.hpp"

namespace degenfv {

/// Uniform partition of [a, b_end] into `cells` cells (at least 3).
class Grid {
 public:
  Grid(double a, double b_end, std::size_t cells);
  /// Cell count round((b_end - a) / dx).
  static Grid with_spacing(Interval domain, double dx);

  double a() const noexcept { return a_; }
  double b_end() const noexcept { return b_end_; }
  std::size_t cells() const noexcept { return cells_; }
  double dx() const noexcept { return (b_end_ - a_) / static_cast<double>(cells_); }
  /// Position of face k, k = 0..cells (face k is the left face of cell k).
  double face(std::size_t k) const noexcept;
  double center(std::size_t i) const noexcept;

  bool operator==(const Grid&) const = default;

 private:
  double a_;
  double b_end_;
  std::size_t cells_;
};

struct CellField {
  Grid grid;
  std::vector<double> values;

  double mass() const;
};

/// Cell averages of u0; exact for piecewise-constant data. Throws
/// kInitOutOfRange when an average leaves [0, u_max].
CellField init_cells(const ProblemSpec& spec, const Grid& grid);

struct SchemeConfig {
  NumericalFlux flux;
  std::optional<double> fixed_dt{};
  double cfl_safety = 1.0;
  double epsilon = 0.0;
  /// Times at which to keep the field; the horizon is always added.
  std::vector<double> snapshot_times{};
  /// Reproduce the left-boundary update with +b(u_1) as the left face flux.
  bool paper_literal_left_boundary = false;
  /// Keep the field after every step (needed by the step-wise diagnostics).
  bool keep_history = false;
};

/// The spatial operator: numerical flux plus diffusion phi_eps and boundary
/// function b_eps. With epsilon = 0 these are the problem's own phi and b.
class Scheme {
 public:
  /// Throws kNoBeta when epsilon > 0 and b cannot be written as beta o phi.
  Scheme(const ProblemSpec& spec, const SchemeConfig& config);

  const NumericalFlux& flux() const noexcept { return flux_; }
  const ScalarFn& diffusion() const noexcept { return diffusion_; }
  const ScalarFn& boundary() const noexcept { return boundary_; }
  double epsilon() const noexcept { return epsilon_; }
  bool paper_literal_left_boundary() const noexcept { return paper_literal_left_; }

  double left_face_flux(double u_first) const;
  double right_face_flux(double u_last) const { return boundary_(u_last); }

  /// Total fluxes f(u) - phi(u)_x on faces 0..I. Interior faces use the
  /// numerical flux and a two-point difference of phi; boundary faces carry
  /// -b(u_1) and +b(u_I).
  void face_fluxes(std::span<const double> u, double dx, std::span<double> out) const;

  /// Largest step keeping the update monotone, including boundary cells.
  double max_stable_dt(const Grid& grid) const;

 private:
  NumericalFlux flux_;
  ScalarFn diffusion_;
  ScalarFn boundary_;
  double epsilon_;
  bool paper_literal_left_;
};

/// cfl_safety * min(dx^2 / (s dx + 2 L_phi_eps), dx^2 / ((s + L_b_eps) dx + L_phi_eps)),
/// s the convective speed of the flux. The first bound is the interior one.
double compute_dt(const ProblemSpec& spec, const Grid& grid, const SchemeConfig& config);

/// The fixed step if configured (checked against the stability bound), the
/// CFL-derived one otherwise.
double resolve_dt(const ProblemSpec& spec, const Grid& grid, const SchemeConfig& config);

struct StepResult {
  CellField field;
  double left_flux;
  double right_flux;
};

StepResult step(const CellField& state, const Scheme& scheme, double dt);
CellField step(const CellField& state, const ProblemSpec& spec, const SchemeConfig& config);

struct StepLog {
  std::size_t step;
  double time;
  double dt;
  double mass;        // after the step
  double left_flux;   // total flux through face 1/2, positive in +x
  double right_flux;  // total flux through face I+1/2
  double min;
  double max;
  std::size_t argmin;
  std::size_t argmax;
};

struct Snapshot {
  double time;
  std::size_t step;
  CellField field;
};

struct SolutionRecord {
  std::string flux_name;
  double epsilon;
  bool paper_literal_left_boundary;
  Grid grid;
  std::vector<Snapshot> snapshots;
  /// steps[0] describes the initial field (dt = 0, zero fluxes).
  std::vector<StepLog> steps;
  /// history[n] is the field after step n when keep_history is set.
  std::vector<std::vector<double>> history;

  const Snapshot& final_snapshot() const { return snapshots.back(); }
};

/// Advances from init_cells to the horizon with a constant step; the last
/// step of each segment is shortened to land on snapshot times and T.
SolutionRecord run(const ProblemSpec& spec, const Grid& grid, const SchemeConfig& config);
SolutionRecord run_from(const CellField& initial, const ProblemSpec& spec,
                        const SchemeConfig& config);

/// run() with phi_eps = phi + eps Id and b_eps = beta o phi_eps; requires
/// epsilon > 0 and a reconstructible beta.
SolutionRecord viscous_run(const ProblemSpec& spec, const Grid& grid, const SchemeConfig& config);

}  // namespace degenfv
