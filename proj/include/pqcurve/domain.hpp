#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace pqcurve {

/// Per-node values on a Grid.
using Vector = Eigen::VectorXd;

/// Invalid input: bad interval, out-of-range exponent, malformed config, ...
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure hit its iteration cap or produced an unusable result.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform midpoint partition of (x_lo, x_hi) into n cells.
///
/// Node i sits at the center of cell [x_i - h/2, x_i + h/2]; the cells tile the
/// interval exactly. Values outside the interval are implicitly zero.
struct Grid {
  double x_lo = 0.0;
  double x_hi = 0.0;
  std::size_t n = 0;
  double h = 0.0;
  double diam = 0.0;
  Vector nodes;

  [[nodiscard]] double center() const { return 0.5 * (x_lo + x_hi); }
};

Grid build_grid(double x_lo, double x_hi, std::size_t n);

/// Named analytic weight from the whitelist accepted in config files:
///   const:c          w(x) = c
///   affine:c0,c1     w(x) = c0 + c1*x
///   sin_offset:c     w(x) = c + sin(x)
struct WeightSpec {
  enum class Kind { Constant, Affine, SinOffset };

  Kind kind = Kind::Constant;
  double c0 = 1.0;
  double c1 = 0.0;

  static WeightSpec parse(const std::string& text);
  static WeightSpec constant(double c) { return {Kind::Constant, c, 0.0}; }

  [[nodiscard]] double operator()(double x) const;
  [[nodiscard]] std::string to_string() const;
};

/// Strictly positive per-node samples of a weight function, with cached
/// extrema. sup() is the discrete L-infinity norm.
class WeightField {
 public:
  explicit WeightField(Vector values);

  [[nodiscard]] const Vector& values() const { return values_; }
  [[nodiscard]] double inf() const { return inf_; }
  [[nodiscard]] double sup() const { return sup_; }
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(values_.size()); }

 private:
  Vector values_;
  double inf_;
  double sup_;
};

WeightField sample_weight(const std::function<double(double)>& weight, const Grid& grid);
WeightField sample_weight(const WeightSpec& spec, const Grid& grid);

/// Scalar parameters of the coupled system before validation.
struct RawParams {
  double p = 2.0;
  double q = 2.0;
  double s1 = 0.5;
  double s2 = 0.5;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 1.0;
  double beta2 = 1.0;
};

/// Validated system parameters together with the weights a, b and the derived
/// exponents theta = sqrt(beta1 (p-1-alpha1)), zeta = sqrt(beta2 (q-1-alpha2))
/// and omega = (p-1)/beta1. Only produced by validate_params.
struct SystemParams {
  double p, q, s1, s2;
  double alpha1, alpha2, beta1, beta2;
  WeightField a;
  WeightField b;
  double theta, zeta, omega;

  /// p - 1 - alpha1: the homogeneity gap of the first equation.
  [[nodiscard]] double gap1() const { return p - 1.0 - alpha1; }
  /// q - 1 - alpha2.
  [[nodiscard]] double gap2() const { return q - 1.0 - alpha2; }
  [[nodiscard]] RawParams raw() const { return {p, q, s1, s2, alpha1, alpha2, beta1, beta2}; }
};

/// Relative tolerance on beta1*beta2 == (p-1-alpha1)(q-1-alpha2).
inline constexpr double kBalanceTolerance = 1e-12;

/// Checks exponent ranges and the balance condition
/// beta1*beta2 = (p-1-alpha1)(q-1-alpha2); throws ParameterError otherwise.
SystemParams validate_params(const RawParams& raw, WeightField a, WeightField b);

}  // namespace pqcurve
