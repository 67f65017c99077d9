#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "degenfv/fv_solver.hpp"
#include "degenfv/stationary.hpp"

namespace degenfv {

struct CheckResult {
  std::string name;
  bool pass = true;
  double magnitude = 0.0;
  double tolerance = 0.0;
  std::optional<std::size_t> witness_step;
  std::optional<std::size_t> witness_cell;  // 1-based
  std::string note;
};

struct DiagnosticsReport {
  std::vector<CheckResult> checks;

  void add(CheckResult check) { checks.push_back(std::move(check)); }
  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
  /// `check,pass,magnitude,tolerance,witness_step,witness_cell`
  std::string to_csv() const;
  std::string summary() const;
};

struct MaxPrincipleReport {
  CheckResult check;
  double min;
  double max;
};

/// Global extremes over every step of the record; the witness is the first
/// (step, cell) outside [-1e-12, u_max + 1e-12].
MaxPrincipleReport max_principle_scan(const SolutionRecord& rec, double u_max);

/// Per-step discrete mass identity
/// |M^{n+1} - M^n + dt (right_flux - left_flux)| <= 1e-13 I.
CheckResult mass_balance_check(const SolutionRecord& rec);

struct EntropyReport {
  CheckResult check;       // interior cells, asserted
  double interior_max;     // max positive interior residual
  double boundary_max;     // max positive augmented boundary residual (informational)
  double worst_k;
};

/// Cell entropy inequalities for the Kruzhkov entropies |u - k|, k in
/// `k_grid`, between consecutive steps. Needs a record with history.
EntropyReport entropy_residual(const SolutionRecord& rec, const ProblemSpec& spec,
                               const NumericalFlux& flux, const std::vector<double>& k_grid);

/// Stationary analogue: max over interior cells and k of
/// (G_{i+1/2} - G_{i-1/2})/dx - (Theta_{i+1/2} - Theta_{i-1/2})/dx^2 - sign0(u_i - k)(g_i - u_i).
double stationary_entropy_residual(const CellField& u, const StationaryProblem& prob,
                                   const NumericalFlux& flux, const std::vector<double>& k_grid);

struct ContractionReport {
  CheckResult check;
  std::vector<double> distances;  // sum |u^n - v^n| dx per step
};

ContractionReport l1_contraction_check(const SolutionRecord& rec1, const SolutionRecord& rec2);

struct IntegralSolutionReport {
  CheckResult check;
  std::vector<double> distances;  // D(t_n) per snapshot
};

/// Discrete dissipation inequality between a run and a stationary pair
/// (u_stat, g), one test per consecutive snapshot pair.
IntegralSolutionReport integral_solution_check(const SolutionRecord& rec, const CellField& u_stat,
                                               const std::vector<double>& g, double tol = 1e-8);

struct BoundaryLayer {
  double left;
  double right;
};

/// Ratio of the steepest slope among the `width` cells next to each boundary
/// to the median slope over the interior third. 0/0 counts as 1.
BoundaryLayer boundary_layer_indicator(const CellField& field, std::size_t width);

struct ViscousNorms {
  double epsilon;
  double gradient;   // eps * sum ((u_{i+1}-u_i)/dx)^2 dx dt
  double diffusion;  // sum (phi_eps(u)^2 + (d phi_eps(u)/dx)^2) dx dt
  double boundary;   // sum (|b_eps(u_1)| + |b_eps(u_I)|) dt
};

struct ViscousReport {
  CheckResult check;
  std::vector<ViscousNorms> rows;  // by decreasing epsilon
  double gradient_growth;
  double diffusion_growth;
  double boundary_growth;
};

/// Flags any norm that grows by more than 2x as epsilon decreases. Needs at
/// least two records, each with history.
ViscousReport viscous_estimates(const std::vector<std::pair<double, const SolutionRecord*>>& runs,
                                const ProblemSpec& spec);

/// sum |u_i - v_i| dx
double l1_distance(const CellField& u, const CellField& v);
/// Averages pairs of fine cells onto a grid with half as many cells.
CellField coarsen(const CellField& fine);

}  // namespace degenfv
