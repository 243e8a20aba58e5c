#include "pqcurve/fracop.hpp"

#include <cmath>

namespace pqcurve {

namespace {

void check_length(const KernelMatrix& kernel, const Vector& u) {
  if (static_cast<std::size_t>(u.size()) != kernel.size()) {
    throw ParameterError("vector length " + std::to_string(u.size()) + " does not match grid size " +
                         std::to_string(kernel.size()));
  }
}

// |t|^m
double abs_pow(double t, double m) {
  const double a = std::abs(t);
  if (m == 2.0) return a * a;
  if (m == 3.0) return a * a * a;
  return std::pow(a, m);
}

// Integral of r^(-1-sm) over [a, a+h], a > 0, without cancellation for a >> h.
double cell_integral(double a, double h, double sm) {
  return -std::pow(a, -sm) * std::expm1(-sm * std::log1p(h / a)) / sm;
}

}  // namespace

double phi(double t, double m) {
  if (m == 2.0) return t;
  if (m == 3.0) return std::abs(t) * t;
  if (t == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(t), m - 1.0), t);
}

KernelMatrix assemble(const Grid& grid, double s, double m) {
  if (!(s > 0.0 && s < 1.0)) throw ParameterError("fractional order s must lie in (0,1)");
  if (!(m > 1.0) || !std::isfinite(m)) throw ParameterError("exponent m must exceed 1");

  const auto n = static_cast<Eigen::Index>(grid.n);
  KernelMatrix kernel;
  kernel.s = s;
  kernel.m = m;
  kernel.sm = s * m;
  kernel.h = grid.h;

  Vector by_offset(n);
  by_offset[0] = 0.0;
  for (Eigen::Index k = 1; k < n; ++k) {
    by_offset[k] = cell_integral((static_cast<double>(k) - 0.5) * grid.h, grid.h, kernel.sm);
  }
  kernel.weights.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      kernel.weights(i, j) = by_offset[std::abs(i - j)];
    }
  }

  kernel.tail.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double left = grid.nodes[i] - grid.x_lo;
    const double right = grid.x_hi - grid.nodes[i];
    kernel.tail[i] = (std::pow(left, -kernel.sm) + std::pow(right, -kernel.sm)) / kernel.sm;
  }
  return kernel;
}

Vector apply(const KernelMatrix& kernel, const Vector& u) {
  check_length(kernel, u);
  const Eigen::Index n = u.size();
  const double m = kernel.m;
  Vector out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      acc += kernel.weights(i, j) * phi(u[i] - u[j], m);
    }
    out[i] = acc + kernel.tail[i] * phi(u[i], m);
  }
  return out;
}

double energy(const KernelMatrix& kernel, const Vector& u) {
  check_length(kernel, u);
  const Eigen::Index n = u.size();
  const double m = kernel.m;
  double pairs = 0.0;
  double tails = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      pairs += kernel.weights(i, j) * abs_pow(u[i] - u[j], m);
    }
    tails += kernel.tail[i] * abs_pow(u[i], m);
  }
  return kernel.h / m * (pairs + tails);
}

Eigen::MatrixXd regularized_jacobian(const KernelMatrix& kernel, const Vector& u, double eps) {
  check_length(kernel, u);
  const Eigen::Index n = u.size();
  const double m = kernel.m;
  const double e2 = eps * eps;
  auto slope = [m, e2](double t) {
    if (m == 2.0) return 1.0;
    return (m - 1.0) * std::pow(t * t + e2, 0.5 * (m - 2.0));
  };

  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double diag = kernel.tail[i] * slope(u[i]);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double c = kernel.weights(i, j) * slope(u[i] - u[j]);
      jac(i, j) = -c;
      diag += c;
    }
    jac(i, i) = diag;
  }
  return jac;
}

}  // namespace pqcurve
