#pragma once

#include <random>
#include <string>
#include <vector>

#include "degenfv/config.hpp"
#include "degenfv/error.hpp"
#include "degenfv/problem.hpp"

namespace degenfv::testing {

inline ProblemSpec preset(const std::string& name) {
  return build_problem(preset_manifest(name));
}

inline ProblemSpec custom(ScalarFn f, ScalarFn b, double u_c, InitialData u0,
                          double horizon = 0.12) {
  ProblemSpec spec{"custom",         std::move(f), DiffusionSpec{u_c, 1.0, fns::threshold(u_c)},
                   BoundarySpec{std::move(b), std::nullopt}, std::move(u0), Interval{0.0, 1.0},
                   horizon};
  return spec;
}

inline std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(0.0, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

template <typename F>
ErrorKind error_kind_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  throw std::logic_error("expected degenfv::Error");
}

}  // namespace degenfv::testing
