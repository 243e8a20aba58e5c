#include "pqcurve/principal.hpp"

#include <cmath>
#include <sstream>

namespace pqcurve {

namespace {

// |t|^(r-1) t
Vector signed_pow(const Vector& t, double r) {
  Vector out(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    out[i] = t[i] == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(t[i]), r), t[i]);
  }
  return out;
}

Vector coupled_solve(const Vector& other, const Vector& weight, double alpha, double beta,
                     const KernelMatrix& kernel, double tol, const char* name) {
  if ((other.array() < 0.0).any()) {
    throw ParameterError(std::string(name) + " needs a nonnegative argument");
  }
  if (!(other.array() > 0.0).any()) {
    throw ParameterError(std::string(name) + " of the zero vector has no positive solution");
  }
  const Vector g = (weight.array() * other.array().pow(beta)).matrix();
  const SolveReport report = solve_subhomogeneous(kernel, alpha, g, tol);
  if (!report.converged) {
    std::ostringstream msg;
    msg << name << ": monotone iteration did not converge (residual " << report.residual_inf << ")";
    throw ConvergenceError(msg.str());
  }
  return report.u;
}

double relative_residual(const Vector& lhs, const Vector& rhs) {
  const double scale = rhs.lpNorm<Eigen::Infinity>();
  const double diff = (lhs - rhs).lpNorm<Eigen::Infinity>();
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace

Vector J1(const Vector& v, const SystemParams& params, const KernelMatrix& kernel_p, double tol) {
  return coupled_solve(v, params.a.values(), params.alpha1, params.beta1, kernel_p, tol, "J1");
}

Vector J2(const Vector& u, const SystemParams& params, const KernelMatrix& kernel_q, double tol) {
  return coupled_solve(u, params.b.values(), params.alpha2, params.beta2, kernel_q, tol, "J2");
}

std::array<double, 2> system_residuals(const SystemParams& params, const KernelMatrix& kernel_p,
                                       const KernelMatrix& kernel_q, double lambda, double mu,
                                       const Vector& u, const Vector& v) {
  const Vector rhs1 = lambda * (params.a.values().array() * u.array().abs().pow(params.alpha1) *
                                signed_pow(v, params.beta1).array())
                                   .matrix();
  const Vector rhs2 = mu * (params.b.values().array() * v.array().abs().pow(params.alpha2) *
                            signed_pow(u, params.beta2).array())
                               .matrix();
  return {relative_residual(apply(kernel_p, u), rhs1), relative_residual(apply(kernel_q, v), rhs2)};
}

EigenResult principal_pair(const SystemParams& params, const KernelMatrix& kernel_p,
                           const KernelMatrix& kernel_q, double tol, std::size_t max_iter,
                           const Vector* start) {
  if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
  if (kernel_p.size() != params.a.size() || kernel_q.size() != params.a.size()) {
    throw ParameterError("kernels and weights live on different grids");
  }
  if (kernel_p.m != params.p || kernel_q.m != params.q || kernel_p.s != params.s1 ||
      kernel_q.s != params.s2) {
    throw ParameterError("kernels were assembled for different (s, m) than the parameters");
  }
  const double inner = tol / 10.0;

  Vector u = start != nullptr ? *start : Vector::Ones(static_cast<Eigen::Index>(kernel_p.size()));
  if ((u.array() <= 0.0).any()) throw ParameterError("start vector must be positive");
  u /= u.lpNorm<Eigen::Infinity>();

  EigenResult result;
  double factor = 0.0;
  for (std::size_t k = 1; k <= max_iter; ++k) {
    const Vector image = J1(J2(u, params, kernel_q, inner), params, kernel_p, inner);
    factor = image.lpNorm<Eigen::Infinity>();
    const Vector next = image / factor;
    const double change = (next - u).lpNorm<Eigen::Infinity>();
    result.fp_residual = (image - factor * u).lpNorm<Eigen::Infinity>();
    result.iterations = k;
    u = next;
    if (change <= tol && result.fp_residual <= tol * factor) {
      result.converged = true;
      break;
    }
  }

  result.lambda1_factor = factor;
  result.lambda0 = std::pow(factor, -std::sqrt(params.beta2 / params.gap2()));
  result.u0 = u;

  const auto [lambda_sym, mu_sym] = symmetric_point(result.lambda0, params);
  result.v0 = std::pow(mu_sym, 1.0 / params.gap2()) * J2(u, params, kernel_q, inner);
  result.pde_residuals =
      system_residuals(params, kernel_p, kernel_q, lambda_sym, mu_sym, result.u0, result.v0);
  return result;
}

std::pair<double, double> symmetric_point(double lambda0, const SystemParams& params) {
  return {std::pow(lambda0, 0.5 * params.theta), std::pow(lambda0, 0.5 * params.zeta)};
}

CurvePair eigenpair_for_mu(double mu, const EigenResult& result, const SystemParams& params) {
  if (!(mu > 0.0)) throw ParameterError("mu must be positive on the principal curve");
  if (!result.converged) throw ParameterError("eigen result did not converge");
  const double lambda =
      std::pow(result.lambda0 / std::pow(mu, 1.0 / params.zeta), params.theta);
  const double mu_sym = symmetric_point(result.lambda0, params).second;
  return {lambda, mu, result.u0, std::pow(mu / mu_sym, 1.0 / params.gap2()) * result.v0};
}

CurvePair eigenpair_for_lambda(double lambda, const EigenResult& result, const SystemParams& params) {
  if (!(lambda > 0.0)) throw ParameterError("lambda must be positive on the principal curve");
  if (!result.converged) throw ParameterError("eigen result did not converge");
  const double mu = std::pow(result.lambda0 / std::pow(lambda, 1.0 / params.theta), params.zeta);
  const double mu_sym = symmetric_point(result.lambda0, params).second;
  return {lambda, mu, result.u0, std::pow(mu / mu_sym, 1.0 / params.gap2()) * result.v0};
}

}  // namespace pqcurve
