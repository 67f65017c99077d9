#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "degenfv/fv_solver.hpp"
#include "degenfv/problem.hpp"

namespace degenfv {

/// Flat description of one experiment. Every field maps to a `key = value`
/// line of a config file; a scenario preset supplies the defaults.
struct RunManifest {
  std::string scenario = "fig3";
  std::string flux_function;  // burgers | lwr | zero | linear:<c>
  std::string boundary;       // phi | zero | identity | scaled:<c>
  std::string initial;        // step:<x0>:<value> | constant:<value>
  double u_c = 0.6;
  double u_max = 1.0;
  double a = 0.0;
  double b_end = 1.0;
  double dx = 0.01;
  std::string dt = "fixed";  // fixed (dx^2/5) | cfl | <number>
  double cfl_safety = 1.0;
  double horizon = 0.12;
  std::vector<double> snapshots;
  std::string flux = "godunov";
  double epsilon = 0.0;
  std::string out_dir = "out";
  std::uint64_t seed = 12345;
  bool paper_literal_left_boundary = false;
  std::size_t boundary_layer_width = 3;
  /// Source for the stationary problem: a constant or a CSV path.
  std::string source = "1";
};

/// Preset names: fig1, fig2, fig3, zero-flux.
RunManifest preset_manifest(const std::string& name);
std::vector<std::string> preset_names();

/// Applies one `key = value` assignment. Throws Error(kConfig) on unknown
/// keys or malformed values.
void apply_setting(RunManifest& m, const std::string& key, const std::string& value);

/// Reads a config file. A `scenario` key, if present, is applied first so
/// that the remaining keys override the preset.
RunManifest load_manifest(const std::string& path);

ProblemSpec build_problem(const RunManifest& m);
Grid build_grid(const RunManifest& m);
/// The configured step rule: "fixed" gives dx^2/5, "cfl" leaves it unset.
SchemeConfig build_scheme(const RunManifest& m, const ProblemSpec& spec);

ScalarFn parse_flux_function(const std::string& text, double u_max);
ScalarFn parse_boundary(const std::string& text, const ScalarFn& phi);
InitialData parse_initial(const std::string& text, Interval domain);
std::vector<double> parse_list(const std::string& text);

}  // namespace degenfv
