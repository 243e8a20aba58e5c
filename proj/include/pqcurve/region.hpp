#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pqcurve/principal.hpp"

namespace pqcurve {

enum class RegionStatus { InteriorR1, OnCurve, Outside };

std::string to_string(RegionStatus status);

/// Position of (lambda, mu) relative to the principal curve
/// lambda^(1/theta) mu^(1/zeta) = Lambda0 and the region R1 below it.
/// InteriorR1 covers the closure of R1 minus the curve, axes included.
struct RegionVerdict {
  double lambda = 0.0;
  double mu = 0.0;
  RegionStatus status = RegionStatus::Outside;
  /// lambda^(1/theta) mu^(1/zeta); set when lambda, mu > 0.
  std::optional<double> curve_value;
  double tol = 0.0;
};

double curve_value(double lambda, double mu, const SystemParams& params);

RegionVerdict classify(double lambda, double mu, double lambda0, const SystemParams& params,
                       double tol = 1e-9);

/// (lambda, mu) on the curve for each lambda > 0.
std::vector<std::pair<double, double>> curve_points(double lambda0, const SystemParams& params,
                                                    const std::vector<double>& lambdas);

/// Explicit lower estimate of Lambda0 for an interval of diameter d:
///   1 / ( C_p^((p-1)/theta) C_q^((q-1)/zeta) d^(p s1/theta + q s2/zeta) |a|^(1/theta) |b|^(1/zeta) ).
double lower_bound(const SystemParams& params, double diam, const TorsionConstant& c_p,
                   const TorsionConstant& c_q);

/// Diameter below which (lambda, mu) lies in R1, i.e. the largest d with
/// lower_bound(d) >= lambda^(1/theta) mu^(1/zeta). Requires alpha1 = alpha2 = 0.
double eta_threshold(double lambda, double mu, const SystemParams& params,
                     const TorsionConstant& c_p, const TorsionConstant& c_q);

struct LowerBoundCheck {
  bool holds = false;
  double margin = 0.0;
};

/// holds iff Lambda0 >= bound (1 - 1e-9); margin = Lambda0 / bound.
LowerBoundCheck verify_lower_bound(const EigenResult& result, double bound);

/// The point of the curve on the ray with slope |mu/lambda|. Throws for
/// lambda == 0 or mu == 0.
std::pair<double, double> ray_intersection(double lambda, double mu, double lambda0,
                                           const SystemParams& params);

enum class WmpVerdict { WMPHolds, WMPFails, Inconclusive };

std::string to_string(WmpVerdict verdict);

/// A candidate supersolution pair and the residuals
///   r1 = apply_p(u) - lambda a |v|^(beta1-1) v,  r2 = apply_q(v) - mu b |u|^(beta2-1) u.
struct Witness {
  std::string construction;
  double lambda1 = 0.0;  // curve point the witness was built from, if any
  double mu1 = 0.0;
  Vector u;
  Vector v;
  Vector residual_u;
  Vector residual_v;
  double scale = 0.0;
  bool verified = false;
};

/// Acceptance thresholds for witnesses, relative to scale = max(|u|_inf, |v|_inf).
inline constexpr double kWitnessResidualTol = 1e-8;
inline constexpr double kWitnessNegativityTol = 1e-6;

/// Fills residuals and checks r1, r2 >= -1e-8 scale with u or v <= -1e-6 scale somewhere.
Witness check_witness(std::string construction, double lambda, double mu, Vector u, Vector v,
                      const SystemParams& params, const KernelMatrix& kernel_p,
                      const KernelMatrix& kernel_q);

struct ProbeReport {
  double lambda = 0.0;
  double mu = 0.0;
  std::string forcing;
  bool solver_converged = false;
  std::size_t iterations = 0;
  double min_u = 0.0;
  double min_v = 0.0;
  /// u > 0 and v > 0 at every node.
  bool strictly_positive = false;
  WmpVerdict verdict = WmpVerdict::Inconclusive;
  Vector u;
  Vector v;
  std::optional<Witness> witness;
};

/// Solves apply_p(u) = lambda a |v|^(beta1-1) v + f1, apply_q(v) = mu b |u|^(beta2-1) u + f2
/// by alternating Dirichlet solves from (0, 0). A converged nonnegative
/// solution (up to -tol) gives WMPHolds; a converged solution with a verified
/// negative component gives WMPFails; anything else is Inconclusive.
/// Requires alpha1 = alpha2 = 0 and f1, f2 >= 0.
ProbeReport wmp_probe(double lambda, double mu, const Vector& f1, const Vector& f2,
                      const SystemParams& params, const KernelMatrix& kernel_p,
                      const KernelMatrix& kernel_q, double tol = 1e-8,
                      std::size_t max_iter = 20000, std::string forcing_label = {});

/// Sign-flipped eigenfunction witness for a point outside the validity region
/// (or on the curve). Cases:
///   on the curve:           (-phi, -psi) at (lambda, mu) itself
///   lambda, mu > 0 above:   (-phi, -psi) at the ray intersection
///   lambda < 0:             (-phi,  psi) at a curve point with lambda1 < -lambda, mu1 > -mu
///   lambda >= 0, mu < 0:    ( phi, -psi) at a curve point with mu1 < -mu
/// Reports WMPFails only when check_witness verifies it, Inconclusive otherwise.
ProbeReport counterexample_witness(double lambda, double mu, const EigenResult& result,
                                   const SystemParams& params, const KernelMatrix& kernel_p,
                                   const KernelMatrix& kernel_q, double tol = 1e-9);

enum class ComparisonVerdict { Ordered, Violated, Inconclusive };

std::string to_string(ComparisonVerdict verdict);

struct ComparisonReport {
  double lambda = 0.0;
  double mu = 0.0;
  bool solver_converged = false;
  /// min(z - u), min(w - v) over the nodes.
  double margin_u = 0.0;
  double margin_v = 0.0;
  /// z > u and w > v everywhere, or the two solutions coincide.
  bool strictly_ordered = false;
  ComparisonVerdict verdict = ComparisonVerdict::Inconclusive;
  Vector u, v, z, w;
};

/// Solves the forced system for (f1, g1) and (f2, g2) with 0 <= f1 <= f2,
/// 0 <= g1 <= g2 and checks u <= z + tol, v <= w + tol componentwise.
ComparisonReport wcp_probe(double lambda, double mu, const Vector& f1, const Vector& g1,
                           const Vector& f2, const Vector& g2, const SystemParams& params,
                           const KernelMatrix& kernel_p, const KernelMatrix& kernel_q,
                           double tol = 1e-8, std::size_t max_iter = 20000);

}  // namespace pqcurve
