#pragma once

#include <array>
#include <utility>

#include "pqcurve/solvers.hpp"

namespace pqcurve {

/// J1(v): the positive solution u of apply_p(u) = a .* u^alpha1 .* v^beta1.
/// Throws ParameterError for v with a negative entry or v == 0, and
/// ConvergenceError if the inner monotone iteration fails.
Vector J1(const Vector& v, const SystemParams& params, const KernelMatrix& kernel_p, double tol);

/// J2(u): the positive solution v of apply_q(v) = b .* v^alpha2 .* u^beta2.
Vector J2(const Vector& u, const SystemParams& params, const KernelMatrix& kernel_q, double tol);

/// Relative residuals of the two eigen-equations
///   apply_p(u) = lambda a |u|^alpha1 |v|^(beta1-1) v
///   apply_q(v) = mu     b |v|^alpha2 |u|^(beta2-1) u
/// each measured as |lhs - rhs|_inf / |rhs|_inf.
std::array<double, 2> system_residuals(const SystemParams& params, const KernelMatrix& kernel_p,
                                       const KernelMatrix& kernel_q, double lambda, double mu,
                                       const Vector& u, const Vector& v);

/// Principal eigen-data of the coupled system.
///
/// u0 is the normalized fixed point of J1 o J2 (|u0|_inf = 1) with factor
/// lambda1_factor; (u0, v0) is the positive eigenpair at symmetric_point,
/// whose residuals are pde_residuals.
struct EigenResult {
  double lambda1_factor = 0.0;
  double lambda0 = 0.0;
  Vector u0;
  Vector v0;
  std::size_t iterations = 0;
  double fp_residual = 0.0;
  std::array<double, 2> pde_residuals{};
  bool converged = false;
};

/// Normalized fixed-point iteration u <- T(u)/|T(u)|_inf, T = J1 o J2, from u = 1
/// (or `start`). Stops when |u_k - u_{k-1}|_inf <= tol and
/// |T(u) - Lambda1 u|_inf <= tol * Lambda1; inner solves use tol/10.
EigenResult principal_pair(const SystemParams& params, const KernelMatrix& kernel_p,
                           const KernelMatrix& kernel_q, double tol = 1e-10,
                           std::size_t max_iter = 500, const Vector* start = nullptr);

/// The curve point with lambda^(1/theta) = mu^(1/zeta) = sqrt(Lambda0), i.e.
/// (Lambda0^(theta/2), Lambda0^(zeta/2)). Equal to (sqrt(Lambda0), sqrt(Lambda0)) when theta = zeta.
std::pair<double, double> symmetric_point(double lambda0, const SystemParams& params);

/// A point of the principal curve with its positive eigenfunctions.
struct CurvePair {
  double lambda = 0.0;
  double mu = 0.0;
  Vector u;
  Vector v;
};

/// mu = (Lambda0 / lambda^(1/theta))^zeta with u = u0 and v = (mu/mu0)^(1/(q-1-alpha2)) v0,
/// mu0 the symmetric-point value.
CurvePair eigenpair_for_lambda(double lambda, const EigenResult& result, const SystemParams& params);

/// Same as eigenpair_for_lambda, parametrized by mu instead.
CurvePair eigenpair_for_mu(double mu, const EigenResult& result, const SystemParams& params);

}  // namespace pqcurve
