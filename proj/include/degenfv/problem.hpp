#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace degenfv {

/// Monotonicity class of a scalar function on the whole real line. Numerical
/// fluxes use it for closed-form interval extrema; kGeneric falls back to
/// sampling.
enum class Shape {
  kGeneric,
  kNondecreasing,
  kNonincreasing,
  kPeak,    // non-decreasing up to turning_point, non-increasing after
  kValley,  // non-increasing up to turning_point, non-decreasing after
};

/// A real function of the state variable with a declared Lipschitz bound.
class ScalarFn {
 public:
  using Rule = std::function<double(double)>;

  ScalarFn(std::string name, Rule rule, double lipschitz, Shape shape = Shape::kGeneric,
           double turning_point = 0.0);

  double operator()(double s) const { return rule_(s); }

  const std::string& name() const noexcept { return name_; }
  double lipschitz() const noexcept { return lipschitz_; }
  Shape shape() const noexcept { return shape_; }
  double turning_point() const noexcept { return turning_point_; }

 private:
  std::string name_;
  Rule rule_;
  double lipschitz_;
  Shape shape_;
  double turning_point_;
};

/// The built-in function library.
namespace fns {
ScalarFn zero();
ScalarFn identity();
ScalarFn linear(double slope);
ScalarFn affine(double slope, double offset);
/// u^2/2; Lipschitz constant u_max on [0, u_max].
ScalarFn burgers(double u_max = 1.0);
/// u(1-u) on [0,1], zero elsewhere.
ScalarFn lwr();
/// (u - u_c)^+
ScalarFn threshold(double u_c);
ScalarFn scaled(double factor, const ScalarFn& g);
}  // namespace fns

struct Interval {
  double lo;
  double hi;
};

/// Outward normals of the two endpoints of the interval domain.
inline constexpr double kNormalLeft = -1.0;
inline constexpr double kNormalRight = +1.0;

struct DiffusionSpec {
  double u_c;
  double u_max;
  ScalarFn phi;
};

struct BoundarySpec {
  ScalarFn b;
  std::optional<ScalarFn> beta;
};

/// Initial datum u0(x). Piecewise-constant data integrate exactly; anything
/// else goes through composite Gauss-Legendre quadrature.
class InitialData {
 public:
  static InitialData constant(double value);
  /// `breakpoints` has one more entry than `values`; value k holds on
  /// [breakpoints[k], breakpoints[k+1]).
  static InitialData piecewise_constant(std::vector<double> breakpoints,
                                        std::vector<double> values);
  static InitialData function(std::function<double(double)> rule);

  double operator()(double x) const;
  double integral(double lo, double hi) const;
  bool is_piecewise_constant() const noexcept { return !rule_; }

 private:
  InitialData() = default;

  std::vector<double> breakpoints_;
  std::vector<double> values_;
  std::function<double(double)> rule_;
};

struct ProblemSpec {
  std::string name;
  ScalarFn f;
  DiffusionSpec diffusion;
  BoundarySpec boundary;
  InitialData u0;
  Interval domain;
  double horizon;

  double u_max() const noexcept { return diffusion.u_max; }
};

/// Throws Error(kInvalidSpec) when a structural invariant of the problem
/// data fails at sample resolution. Standing hypotheses (H1)-(H3) are not
/// enforced here; see check_hypotheses().
void validate(const ProblemSpec& spec, std::size_t n_samples = 10000);

/// Piecewise-linear monotone reconstruction of beta with b = beta o phi.
/// Linear extrapolation beyond the sampled range of phi.
class BetaTable {
 public:
  BetaTable(std::vector<double> phi_values, std::vector<double> b_values);

  double operator()(double phi_value) const;
  double lipschitz() const noexcept { return lipschitz_; }
  const std::vector<double>& knots() const noexcept { return xs_; }
  const std::vector<double>& values() const noexcept { return ys_; }
  bool non_decreasing() const;
  ScalarFn as_fn() const;

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  double lipschitz_ = 0.0;
};

struct H1Result {
  bool pass;
  double f_at_zero;
  double b_at_zero;
};

struct H2Result {
  bool pass;
  double flat_variation;  // max - min of b on sampled [0, u_c]
  double beta_lipschitz;
  std::optional<BetaTable> beta;
  std::string reason;
};

struct H3Result {
  bool pass;
  double margin;  // b(u_max) - |f(u_max)|
};

struct NondegeneracyResult {
  bool nondegenerate;
  double longest_affine_window;
};

struct HypothesisReport {
  H1Result h1;
  H2Result h2;
  H3Result h3;
  NondegeneracyResult nondegeneracy;
};

H1Result check_h1(const ProblemSpec& spec);

/// Throws Error(kInconsistentB) when b differs at two samples with equal phi.
BetaTable reconstruct_beta(const ProblemSpec& spec, std::size_t n_samples = 10000);

H2Result check_h2(const ProblemSpec& spec, std::size_t n_samples = 10000);
H3Result check_h3(const ProblemSpec& spec);

/// Scans [0, u_c] for a window of length >= `window` on which the raw second
/// differences of f stay below `tol`. A non-positive window means u_c/20.
NondegeneracyResult check_nondegeneracy(const ProblemSpec& spec, double window = 0.0,
                                        double tol = 1e-10);

HypothesisReport check_hypotheses(const ProblemSpec& spec, std::size_t n_samples = 10000);

/// Sampled Lipschitz constant of g over `range`. Slopes are measured on a
/// fixed dyadic lattice anchored at 0 (every lattice segment meeting `range`,
/// each subdivided 16 times), so the estimate is monotone under interval
/// inclusion.
double lipschitz_estimate(const ScalarFn& g, Interval range);

}  // namespace degenfv
