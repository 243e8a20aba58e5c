#pragma once

#include <filesystem>
#include <istream>
#include <random>

#include "pqcurve/domain.hpp"
#include "pqcurve/fracop.hpp"

namespace pqcurve {

/// Contents of a key = value parameter file.
///
/// Recognized keys: p, q, s1, s2, alpha1, alpha2, beta1, beta2, x_lo, x_hi, n,
/// weight_a, weight_b. Blank lines and text after '#' are ignored. alpha1,
/// alpha2 default to 0, n to 100 and both weights to const:1; every other key
/// is required.
struct ProblemConfig {
  RawParams raw;
  double x_lo = -1.0;
  double x_hi = 1.0;
  std::size_t n = 100;
  WeightSpec weight_a = WeightSpec::constant(1.0);
  WeightSpec weight_b = WeightSpec::constant(1.0);
};

ProblemConfig parse_config(std::istream& in);
ProblemConfig load_config(const std::filesystem::path& file);

/// Everything the pipelines need, built from a ProblemConfig.
struct Problem {
  Grid grid;
  SystemParams params;
  KernelMatrix kernel_p;
  KernelMatrix kernel_q;
};

Problem build_problem(const ProblemConfig& config);

/// Same problem on a different interval (weights resampled).
Problem build_problem(const ProblemConfig& config, double x_lo, double x_hi);

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_uniform(std::mt19937_64& rng);

/// Random nonnegative cubic sum_k c_k t^k (1-t)^(3-k), t = (x - x_lo)/diam, c_k in [0, 1).
Vector random_polynomial_forcing(const Grid& grid, std::mt19937_64& rng);

}  // namespace pqcurve
