#include "pqcurve/region.hpp"

#include <algorithm>
#include <cmath>

namespace pqcurve {

namespace {

// |t|^(r-1) t, elementwise
Vector signed_pow(const Vector& t, double r) {
  Vector out(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    out[i] = t[i] == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(t[i]), r), t[i]);
  }
  return out;
}

void require_uncoupled_powers(const SystemParams& params) {
  if (params.alpha1 != 0.0 || params.alpha2 != 0.0) {
    throw ParameterError("maximum-principle probes need alpha1 = alpha2 = 0");
  }
}

struct ForcedSolution {
  Vector u;
  Vector v;
  bool converged = false;
  std::size_t iterations = 0;
};

ForcedSolution solve_forced(double lambda, double mu, const Vector& f1, const Vector& f2,
                            const SystemParams& params, const KernelMatrix& kernel_p,
                            const KernelMatrix& kernel_q, std::size_t max_iter) {
  constexpr double kIterTol = 1e-11;
  constexpr double kSolveTol = 1e-12;
  const auto n = static_cast<Eigen::Index>(kernel_p.size());
  if (f1.size() != n || f2.size() != n) throw ParameterError("forcing length does not match grid");

  ForcedSolution out;
  out.u = Vector::Zero(n);
  out.v = Vector::Zero(n);
  const Vector& a = params.a.values();
  const Vector& b = params.b.values();

  for (std::size_t k = 1; k <= max_iter; ++k) {
    out.iterations = k;
    const Vector rhs_u = (lambda * a.array() * signed_pow(out.v, params.beta1).array()).matrix() + f1;
    SolveReport su = solve_dirichlet(kernel_p, rhs_u, kSolveTol, 200, &out.u);
    if (!su.converged) return out;
    const Vector rhs_v = (mu * b.array() * signed_pow(su.u, params.beta2).array()).matrix() + f2;
    SolveReport sv = solve_dirichlet(kernel_q, rhs_v, kSolveTol, 200, &out.v);
    if (!sv.converged) return out;

    const double du = (su.u - out.u).lpNorm<Eigen::Infinity>();
    const double dv = (sv.u - out.v).lpNorm<Eigen::Infinity>();
    out.u = std::move(su.u);
    out.v = std::move(sv.u);
    const double nu = out.u.lpNorm<Eigen::Infinity>();
    const double nv = out.v.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(nu) || !std::isfinite(nv) || nu > 1e100 || nv > 1e100) return out;
    if (du <= kIterTol * nu && dv <= kIterTol * nv) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

}  // namespace

std::string to_string(RegionStatus status) {
  switch (status) {
    case RegionStatus::InteriorR1:
      return "InteriorR1";
    case RegionStatus::OnCurve:
      return "OnCurve";
    case RegionStatus::Outside:
      return "Outside";
  }
  return "Outside";
}

std::string to_string(WmpVerdict verdict) {
  switch (verdict) {
    case WmpVerdict::WMPHolds:
      return "WMPHolds";
    case WmpVerdict::WMPFails:
      return "WMPFails";
    case WmpVerdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

std::string to_string(ComparisonVerdict verdict) {
  switch (verdict) {
    case ComparisonVerdict::Ordered:
      return "Ordered";
    case ComparisonVerdict::Violated:
      return "Violated";
    case ComparisonVerdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

double curve_value(double lambda, double mu, const SystemParams& params) {
  return std::pow(lambda, 1.0 / params.theta) * std::pow(mu, 1.0 / params.zeta);
}

RegionVerdict classify(double lambda, double mu, double lambda0, const SystemParams& params,
                       double tol) {
  if (!(lambda0 > 0.0)) throw ParameterError("Lambda0 must be positive");
  RegionVerdict verdict{lambda, mu, RegionStatus::Outside, std::nullopt, tol};
  if (lambda < 0.0 || mu < 0.0) return verdict;
  if (lambda == 0.0 || mu == 0.0) {
    verdict.status = RegionStatus::InteriorR1;
    return verdict;
  }
  const double value = curve_value(lambda, mu, params);
  verdict.curve_value = value;
  if (std::abs(value - lambda0) <= tol * lambda0) {
    verdict.status = RegionStatus::OnCurve;
  } else if (value < lambda0) {
    verdict.status = RegionStatus::InteriorR1;
  }
  return verdict;
}

std::vector<std::pair<double, double>> curve_points(double lambda0, const SystemParams& params,
                                                    const std::vector<double>& lambdas) {
  std::vector<std::pair<double, double>> points;
  points.reserve(lambdas.size());
  for (const double lambda : lambdas) {
    if (!(lambda > 0.0)) throw ParameterError("curve points need lambda > 0");
    points.emplace_back(lambda,
                        std::pow(lambda0 / std::pow(lambda, 1.0 / params.theta), params.zeta));
  }
  return points;
}

namespace {

// C_p^((p-1)/theta) C_q^((q-1)/zeta) |a|^(1/theta) |b|^(1/zeta)
double bound_constant(const SystemParams& params, const TorsionConstant& c_p,
                      const TorsionConstant& c_q) {
  return std::pow(c_p.value, (params.p - 1.0) / params.theta) *
         std::pow(c_q.value, (params.q - 1.0) / params.zeta) *
         std::pow(params.a.sup(), 1.0 / params.theta) * std::pow(params.b.sup(), 1.0 / params.zeta);
}

// exponent of d in the lower bound
double diameter_exponent(const SystemParams& params) {
  return params.p * params.s1 / params.theta + params.q * params.s2 / params.zeta;
}

}  // namespace

double lower_bound(const SystemParams& params, double diam, const TorsionConstant& c_p,
                   const TorsionConstant& c_q) {
  if (!(diam > 0.0)) throw ParameterError("diameter must be positive");
  return 1.0 / (bound_constant(params, c_p, c_q) * std::pow(diam, diameter_exponent(params)));
}

double eta_threshold(double lambda, double mu, const SystemParams& params,
                     const TorsionConstant& c_p, const TorsionConstant& c_q) {
  require_uncoupled_powers(params);
  if (!(lambda > 0.0) || !(mu > 0.0)) throw ParameterError("eta needs lambda, mu > 0");
  const double inner = curve_value(lambda, mu, params) * bound_constant(params, c_p, c_q);
  // theta*zeta = beta1*beta2 here, so 1/exponent = beta1 beta2 / (p s1 zeta + q s2 theta).
  return std::pow(inner, -1.0 / diameter_exponent(params));
}

LowerBoundCheck verify_lower_bound(const EigenResult& result, double bound) {
  return {result.lambda0 >= bound * (1.0 - 1e-9), result.lambda0 / bound};
}

std::pair<double, double> ray_intersection(double lambda, double mu, double lambda0,
                                           const SystemParams& params) {
  if (lambda == 0.0) throw ParameterError("ray intersection needs lambda != 0");
  if (mu == 0.0) throw ParameterError("the ray mu = 0 never meets the principal curve");
  const double ratio = std::abs(mu / lambda);
  const double th = params.theta;
  const double ze = params.zeta;
  const double lambda1 =
      std::pow(lambda0 * std::pow(std::abs(lambda) / std::abs(mu), 1.0 / ze), th * ze / (th + ze));
  return {lambda1, lambda1 * ratio};
}

Witness check_witness(std::string construction, double lambda, double mu, Vector u, Vector v,
                      const SystemParams& params, const KernelMatrix& kernel_p,
                      const KernelMatrix& kernel_q) {
  Witness w;
  w.construction = std::move(construction);
  w.residual_u = apply(kernel_p, u) -
                 (lambda * params.a.values().array() * signed_pow(v, params.beta1).array()).matrix();
  w.residual_v = apply(kernel_q, v) -
                 (mu * params.b.values().array() * signed_pow(u, params.beta2).array()).matrix();
  w.scale = std::max(u.lpNorm<Eigen::Infinity>(), v.lpNorm<Eigen::Infinity>());
  const bool inequalities = w.residual_u.minCoeff() >= -kWitnessResidualTol * w.scale &&
                            w.residual_v.minCoeff() >= -kWitnessResidualTol * w.scale;
  const bool negative = std::min(u.minCoeff(), v.minCoeff()) <= -kWitnessNegativityTol * w.scale;
  w.verified = w.scale > 0.0 && inequalities && negative;
  w.u = std::move(u);
  w.v = std::move(v);
  return w;
}

ProbeReport wmp_probe(double lambda, double mu, const Vector& f1, const Vector& f2,
                      const SystemParams& params, const KernelMatrix& kernel_p,
                      const KernelMatrix& kernel_q, double tol, std::size_t max_iter,
                      std::string forcing_label) {
  require_uncoupled_powers(params);
  if ((f1.array() < 0.0).any() || (f2.array() < 0.0).any()) {
    throw ParameterError("WMP probe forcings must be nonnegative");
  }
  ProbeReport report;
  report.lambda = lambda;
  report.mu = mu;
  report.forcing = std::move(forcing_label);

  ForcedSolution sol = solve_forced(lambda, mu, f1, f2, params, kernel_p, kernel_q, max_iter);
  report.solver_converged = sol.converged;
  report.iterations = sol.iterations;
  report.min_u = sol.u.minCoeff();
  report.min_v = sol.v.minCoeff();
  report.strictly_positive = report.min_u > 0.0 && report.min_v > 0.0;
  report.u = sol.u;
  report.v = sol.v;
  if (!sol.converged) return report;

  const double scale = std::max({1.0, sol.u.lpNorm<Eigen::Infinity>(), sol.v.lpNorm<Eigen::Infinity>()});
  if (report.min_u >= -tol * scale && report.min_v >= -tol * scale) {
    report.verdict = WmpVerdict::WMPHolds;
    return report;
  }
  Witness w = check_witness("forced_solution", lambda, mu, std::move(sol.u), std::move(sol.v),
                            params, kernel_p, kernel_q);
  report.verdict = w.verified ? WmpVerdict::WMPFails : WmpVerdict::Inconclusive;
  report.witness = std::move(w);
  return report;
}

ProbeReport counterexample_witness(double lambda, double mu, const EigenResult& result,
                                   const SystemParams& params, const KernelMatrix& kernel_p,
                                   const KernelMatrix& kernel_q, double tol) {
  require_uncoupled_powers(params);
  const RegionVerdict where = classify(lambda, mu, result.lambda0, params, tol);
  if (where.status == RegionStatus::InteriorR1) {
    throw ParameterError("counterexample witnesses exist only outside R1 or on the curve");
  }

  std::string construction;
  CurvePair pair;
  double sign_u = -1.0;
  double sign_v = -1.0;
  if (where.status == RegionStatus::OnCurve) {
    construction = "on_curve";
    pair = eigenpair_for_lambda(lambda, result, params);
  } else if (lambda > 0.0 && mu > 0.0) {
    construction = "above_curve";
    pair = eigenpair_for_lambda(ray_intersection(lambda, mu, result.lambda0, params).first, result,
                                params);
  } else if (lambda < 0.0) {
    construction = "negative_lambda";
    double lambda1 = -0.5 * lambda;
    pair = eigenpair_for_lambda(lambda1, result, params);
    for (int k = 0; k < 200 && mu + pair.mu <= 0.0; ++k) {
      lambda1 *= 0.5;
      pair = eigenpair_for_lambda(lambda1, result, params);
    }
    sign_v = 1.0;
  } else {
    construction = "negative_mu";
    pair = eigenpair_for_mu(-0.5 * mu, result, params);
    sign_u = 1.0;
  }

  ProbeReport report;
  report.lambda = lambda;
  report.mu = mu;
  report.forcing = "eigenfunction_witness";
  report.solver_converged = result.converged;
  Witness w = check_witness(construction, lambda, mu, sign_u * pair.u, sign_v * pair.v, params,
                            kernel_p, kernel_q);
  w.lambda1 = pair.lambda;
  w.mu1 = pair.mu;
  report.u = w.u;
  report.v = w.v;
  report.min_u = w.u.minCoeff();
  report.min_v = w.v.minCoeff();
  report.strictly_positive = report.min_u > 0.0 && report.min_v > 0.0;
  report.verdict = w.verified ? WmpVerdict::WMPFails : WmpVerdict::Inconclusive;
  report.witness = std::move(w);
  return report;
}

ComparisonReport wcp_probe(double lambda, double mu, const Vector& f1, const Vector& g1,
                           const Vector& f2, const Vector& g2, const SystemParams& params,
                           const KernelMatrix& kernel_p, const KernelMatrix& kernel_q, double tol,
                           std::size_t max_iter) {
  require_uncoupled_powers(params);
  if ((f1.array() < 0.0).any() || (g1.array() < 0.0).any() || (f1.array() > f2.array()).any() ||
      (g1.array() > g2.array()).any()) {
    throw ParameterError("comparison probe needs 0 <= f1 <= f2 and 0 <= g1 <= g2");
  }
  ComparisonReport report;
  report.lambda = lambda;
  report.mu = mu;
  ForcedSolution low = solve_forced(lambda, mu, f1, g1, params, kernel_p, kernel_q, max_iter);
  ForcedSolution high = solve_forced(lambda, mu, f2, g2, params, kernel_p, kernel_q, max_iter);
  report.solver_converged = low.converged && high.converged;
  report.margin_u = (high.u - low.u).minCoeff();
  report.margin_v = (high.v - low.v).minCoeff();
  const bool identical = (high.u - low.u).lpNorm<Eigen::Infinity>() == 0.0 &&
                         (high.v - low.v).lpNorm<Eigen::Infinity>() == 0.0;
  report.strictly_ordered = identical || (report.margin_u > 0.0 && report.margin_v > 0.0);
  report.u = std::move(low.u);
  report.v = std::move(low.v);
  report.z = std::move(high.u);
  report.w = std::move(high.v);
  if (!report.solver_converged) return report;
  report.verdict = report.margin_u >= -tol && report.margin_v >= -tol
                       ? ComparisonVerdict::Ordered
                       : ComparisonVerdict::Violated;
  return report;
}

}  // namespace pqcurve
