#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "pqcurve/fracop.hpp"

namespace pqcurve {

struct SolveReport {
  Vector u;
  /// Sup norm of the residual of the defining equation.
  double residual_inf = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// All entries of u strictly positive.
  bool positive = false;
  /// Roundoff level of the residual at u; set when the iteration stalled.
  double residual_floor = 0.0;
};

/// Bound on the rounding error of apply(kernel, u) - f near u: the spread of
/// phi_m over the rounding interval of every difference, plus summation error.
/// Below this level the residual carries no information.
double residual_floor(const KernelMatrix& kernel, const Vector& u);

/// Solves apply(kernel, u) = f by minimizing J(u) = E(u) - h <f, u>.
///
/// Search directions come from the regularized Jacobian (eps = 1e-8 (1 + |u|_inf))
/// and an Armijo backtracking line search keeps J monotonically decreasing.
/// Convergence is declared on the unregularized residual:
///   |apply(u) - f|_inf <= tol * |f|_inf,
/// or, once no step reduces the residual any further, at residual_floor(u).
/// Returns converged = false when max_iter is exhausted or the iteration
/// stalls; never throws for non-convergence.
SolveReport solve_dirichlet(const KernelMatrix& kernel, const Vector& f, double tol,
                            std::size_t max_iter = 200, const Vector* initial = nullptr);

/// Positive solution of apply(kernel, u) = g .* u^alpha, 0 <= alpha < m-1, by
/// monotone iteration from the supersolution t * T(g), t^(m-1-alpha) = |T(g)|_inf^alpha.
///
/// Stops once both |w_k - w_{k-1}|_inf <= tol |w_k|_inf and the residual of the
/// equation is <= tol |g .* w^alpha|_inf. The observer, if set, sees every
/// iterate starting with w_0. `initial` replaces w_0 and must be a
/// supersolution for the iterates to decrease.
SolveReport solve_subhomogeneous(const KernelMatrix& kernel, double alpha, const Vector& g,
                                 double tol, std::size_t max_iter = 500,
                                 const std::function<void(const Vector&)>& observer = {},
                                 const Vector* initial = nullptr);

/// Maximum of the discrete torsion function (apply(w) = 1 on (-1,1), zero outside).
struct TorsionConstant {
  double s = 0.0;
  double m = 0.0;
  double value = 0.0;
  std::size_t n_used = 0;
};

TorsionConstant torsion_constant(double s, double m, std::size_t n, double tol = 1e-12);

/// Aitken extrapolation of a sequence at resolutions n, 2n, 4n.
double aitken_extrapolate(double coarse, double medium, double fine);

/// On-disk cache of torsion constants keyed by (s, m, n); stored as JSON.
class TorsionCache {
 public:
  explicit TorsionCache(std::filesystem::path file);

  /// Cached value or a fresh solve (which is then stored and saved).
  TorsionConstant get(double s, double m, std::size_t n, double tol = 1e-12);
  [[nodiscard]] std::optional<TorsionConstant> lookup(double s, double m, std::size_t n) const;
  [[nodiscard]] const std::filesystem::path& file() const { return file_; }

  static std::string key(double s, double m, std::size_t n);

 private:
  void save() const;

  std::filesystem::path file_;
  std::map<std::string, TorsionConstant> entries_;
};

}  // namespace pqcurve
