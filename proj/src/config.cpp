#include "degenfv/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include "degenfv/error.hpp"

namespace degenfv {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(trim(cur));
  return parts;
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw Error(ErrorKind::kConfig, "'" + key + "' expects a number, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw Error(ErrorKind::kConfig, "'" + key + "' expects true/false, got '" + text + "'");
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "zero-flux"}; }

RunManifest preset_manifest(const std::string& name) {
  RunManifest m;
  m.scenario = name;
  m.initial = "step:0.5:0.7";
  if (name == "fig1") {
    m.flux_function = "burgers";
    m.boundary = "phi";
  } else if (name == "fig2") {
    m.flux_function = "lwr";
    m.boundary = "identity";
  } else if (name == "fig3") {
    m.flux_function = "lwr";
    m.boundary = "phi";
  } else if (name == "zero-flux") {
    m.flux_function = "lwr";
    m.boundary = "zero";
  } else {
    throw Error(ErrorKind::kConfig, "unknown scenario '" + name + "'");
  }
  return m;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (const auto& part : split(text, ',')) out.push_back(parse_double("list", part));
  return out;
}

void apply_setting(RunManifest& m, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "scenario") {
    m = preset_manifest(value);
  } else if (key == "flux_function") {
    m.flux_function = value;
  } else if (key == "boundary") {
    m.boundary = value;
  } else if (key == "initial") {
    m.initial = value;
  } else if (key == "u_c") {
    m.u_c = parse_double(key, value);
  } else if (key == "u_max") {
    m.u_max = parse_double(key, value);
  } else if (key == "a") {
    m.a = parse_double(key, value);
  } else if (key == "b_end") {
    m.b_end = parse_double(key, value);
  } else if (key == "dx") {
    m.dx = parse_double(key, value);
  } else if (key == "dt") {
    if (value != "fixed" && value != "cfl") parse_double(key, value);
    m.dt = value;
  } else if (key == "cfl_safety") {
    m.cfl_safety = parse_double(key, value);
  } else if (key == "T" || key == "horizon") {
    m.horizon = parse_double(key, value);
  } else if (key == "snapshots") {
    m.snapshots = parse_list(value);
  } else if (key == "flux") {
    flux_kind_from_string(value);
    m.flux = value;
  } else if (key == "epsilon") {
    m.epsilon = parse_double(key, value);
  } else if (key == "out") {
    m.out_dir = value;
  } else if (key == "seed") {
    m.seed = static_cast<std::uint64_t>(parse_double(key, value));
  } else if (key == "paper_literal_left_boundary") {
    m.paper_literal_left_boundary = parse_bool(key, value);
  } else if (key == "boundary_layer_width") {
    m.boundary_layer_width = static_cast<std::size_t>(parse_double(key, value));
  } else if (key == "source") {
    m.source = value;
  } else {
    throw Error(ErrorKind::kConfig, "unknown key '" + key + "'");
  }
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kConfig, "cannot open config file " + path);
  std::vector<std::pair<std::string, std::string>> settings;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::kConfig, path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    settings.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  RunManifest m = preset_manifest("fig3");
  for (const auto& [k, v] : settings) {
    if (k == "scenario") apply_setting(m, k, v);
  }
  for (const auto& [k, v] : settings) {
    if (k != "scenario") apply_setting(m, k, v);
  }
  return m;
}

ScalarFn parse_flux_function(const std::string& text, double u_max) {
  if (text == "burgers") return fns::burgers(u_max);
  if (text == "lwr") return fns::lwr();
  if (text == "zero") return fns::zero();
  if (text.rfind("linear:", 0) == 0) return fns::linear(parse_double("flux_function", text.substr(7)));
  throw Error(ErrorKind::kConfig, "unknown flux_function '" + text + "'");
}

ScalarFn parse_boundary(const std::string& text, const ScalarFn& phi) {
  if (text == "phi") return phi;
  if (text == "zero") return fns::zero();
  if (text == "identity") return fns::identity();
  if (text.rfind("scaled:", 0) == 0) return fns::scaled(parse_double("boundary", text.substr(7)), phi);
  throw Error(ErrorKind::kConfig, "unknown boundary '" + text + "'");
}

InitialData parse_initial(const std::string& text, Interval domain) {
  const auto parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "constant") {
    return InitialData::constant(parse_double("initial", parts[1]));
  }
  if (parts.size() == 3 && parts[0] == "step") {
    const double x0 = parse_double("initial", parts[1]);
    const double v = parse_double("initial", parts[2]);
    return InitialData::piecewise_constant({domain.lo, x0, domain.hi}, {0.0, v});
  }
  throw Error(ErrorKind::kConfig, "unknown initial '" + text + "'");
}

ProblemSpec build_problem(const RunManifest& m) {
  const ScalarFn phi = fns::threshold(m.u_c);
  const Interval domain{m.a, m.b_end};
  ProblemSpec spec{m.scenario,
                   parse_flux_function(m.flux_function, m.u_max),
                   DiffusionSpec{m.u_c, m.u_max, phi},
                   BoundarySpec{parse_boundary(m.boundary, phi), std::nullopt},
                   parse_initial(m.initial, domain),
                   domain,
                   m.horizon};
  validate(spec);
  return spec;
}

Grid build_grid(const RunManifest& m) { return Grid::with_spacing({m.a, m.b_end}, m.dx); }

SchemeConfig build_scheme(const RunManifest& m, const ProblemSpec& spec) {
  SchemeConfig cfg{make_flux(flux_kind_from_string(m.flux), spec.f, spec.u_max())};
  const double dx = build_grid(m).dx();
  if (m.dt == "fixed") {
    cfg.fixed_dt = dx * dx / 5.0;
  } else if (m.dt != "cfl") {
    cfg.fixed_dt = parse_double("dt", m.dt);
  }
  cfg.cfl_safety = m.cfl_safety;
  cfg.epsilon = m.epsilon;
  cfg.snapshot_times = m.snapshots;
  cfg.paper_literal_left_boundary = m.paper_literal_left_boundary;
  return cfg;
}

}  // namespace degenfv
