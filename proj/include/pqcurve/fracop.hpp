#pragma once

#include <Eigen/Dense>

#include "pqcurve/domain.hpp"

namespace pqcurve {

/// Odd power map phi_m(t) = |t|^(m-2) t.
double phi(double t, double m);

/// Discrete fractional m-Laplacian of order s on a midpoint grid with zero
/// exterior data, normalization constant omitted.
///
/// weights(i,j) is the exact integral of |x_i - y|^(-1-sm) over cell j, and
/// tail(i) the exact integral over the complement of the interval. The
/// diagonal cell is dropped (principal value on a symmetric cell). On a
/// uniform grid weights(i,j) depends on |i-j| only, so the matrix is
/// symmetric.
struct KernelMatrix {
  double s = 0.0;
  double m = 0.0;
  double sm = 0.0;
  double h = 0.0;
  Eigen::MatrixXd weights;
  Vector tail;

  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(tail.size()); }
};

KernelMatrix assemble(const Grid& grid, double s, double m);

/// (A u)_i = sum_{j != i} W_ij phi_m(u_i - u_j) + tau_i phi_m(u_i).
Vector apply(const KernelMatrix& kernel, const Vector& u);

/// E(u) = (h/m) [ 1/2 sum_{i != j} W_ij |u_i - u_j|^m + sum_i tau_i |u_i|^m ],
/// the discrete Gagliardo energy; its gradient is h * apply(kernel, u).
double energy(const KernelMatrix& kernel, const Vector& u);

/// Jacobian of apply with phi_m' replaced by (m-1)(t^2 + eps^2)^((m-2)/2).
/// Symmetric positive definite for eps > 0; exact for m = 2.
Eigen::MatrixXd regularized_jacobian(const KernelMatrix& kernel, const Vector& u, double eps);

}  // namespace pqcurve
